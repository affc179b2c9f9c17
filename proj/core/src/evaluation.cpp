#include "avfusion/evaluation.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>

#include "avfusion/error.hpp"

namespace avf {

EvalReport evaluate(std::span<const EmotionLabel> predictions, std::span<const EmotionLabel> truths) {
  if (predictions.size() != truths.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(predictions.size()) +
                                                " predictions for " +
                                                std::to_string(truths.size()) + " truths");
  }
  if (truths.empty()) throw Error(ErrorCode::kEmpty, "nothing to evaluate");
  EvalReport r;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    ++r.confusion(truths[i].index(), predictions[i].index());
  }
  r.overall_accuracy =
      static_cast<double>(r.confusion.trace()) / static_cast<double>(truths.size());
  for (int e = 0; e < kNumEmotions; ++e) {
    const long long row = r.confusion.row(e).sum();
    r.per_class_accuracy[e] =
        row > 0 ? static_cast<double>(r.confusion(e, e)) / static_cast<double>(row) : 0.0;
  }
  return r;
}

void write_report_csv(const std::filesystem::path& path, const EvalReport& report) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << "true_label";
  for (auto name : EmotionLabel::kNames) out << ',' << name;
  out << ",total,accuracy\n";
  out << std::setprecision(17);
  for (int e = 0; e < kNumEmotions; ++e) {
    out << EmotionLabel(e).name();
    for (int m = 0; m < kNumEmotions; ++m) out << ',' << report.confusion(e, m);
    out << ',' << report.confusion.row(e).sum() << ',' << report.per_class_accuracy[e] << '\n';
  }
  out << "overall";
  for (int m = 0; m < kNumEmotions; ++m) out << ',' << report.confusion.col(m).sum();
  out << ',' << report.total() << ',' << report.overall_accuracy << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

void print_report(std::ostream& out, const EvalReport& report) {
  out << std::left << std::setw(10) << "true\\pred";
  for (auto name : EmotionLabel::kNames) out << std::right << std::setw(9) << name.substr(0, 8);
  out << std::setw(9) << "acc" << '\n';
  for (int e = 0; e < kNumEmotions; ++e) {
    out << std::left << std::setw(10) << EmotionLabel(e).name();
    for (int m = 0; m < kNumEmotions; ++m) out << std::right << std::setw(9) << report.confusion(e, m);
    out << std::setw(8) << std::fixed << std::setprecision(2)
        << 100.0 * report.per_class_accuracy[e] << "%\n";
  }
  out << "overall accuracy: " << std::fixed << std::setprecision(2)
      << 100.0 * report.overall_accuracy << "% (" << report.confusion.trace() << '/'
      << report.total() << ")\n";
  out.unsetf(std::ios::fixed);
}

}  // namespace avf

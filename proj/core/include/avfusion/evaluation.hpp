#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>

#include <Eigen/Core>

#include "avfusion/emotion.hpp"

namespace avf {

struct EvalReport {
  double overall_accuracy = 0.0;
  /// Recall per true class; 0 for classes absent from the truths.
  Eigen::Matrix<double, kNumEmotions, 1> per_class_accuracy =
      Eigen::Matrix<double, kNumEmotions, 1>::Zero();
  /// confusion(true, predicted) counts.
  Eigen::Matrix<long long, kNumEmotions, kNumEmotions, Eigen::RowMajor> confusion =
      decltype(confusion)::Zero();

  long long total() const noexcept { return confusion.sum(); }
};

/// Throws kLengthMismatch, kEmpty.
EvalReport evaluate(std::span<const EmotionLabel> predictions, std::span<const EmotionLabel> truths);

/// CSV: one row per true class (counts per predicted class, row total,
/// per-class accuracy), then an "overall" row.
void write_report_csv(const std::filesystem::path& path, const EvalReport& report);
/// Fixed-width table for terminals.
void print_report(std::ostream& out, const EvalReport& report);

}  // namespace avf

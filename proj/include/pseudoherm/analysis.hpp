#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pseudoherm/products.hpp"

namespace pseudoherm {

struct AnalyzeOptions {
  Tolerance tol;
  std::optional<CMatrix> metric;      // fundamental metric; auto-selected when absent
  std::vector<int> ordering;          // eigenvalue ordering override
  std::vector<Complex> phase_factors; // explicit per-eigenvector phases
  bool conjugate_pairs = false;       // build the conjugate-paired metric instead
};

struct Verdict {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double threshold = 0.0;
  ErrorClass fail_class = ErrorClass::internal;
};

struct ErrorInfo {
  ErrorClass cls = ErrorClass::internal;
  std::string stage;
  std::string message;
};

/// Everything the pipeline produced; sections stay empty when an earlier
/// stage failed, and `error` records where and why.
struct AnalysisReport {
  CMatrix hamiltonian;
  bool eta_supplied = false;
  std::optional<CMatrix> eta_input;
  Tolerance tol;
  bool conjugate_pairs_requested = false;

  std::optional<std::vector<Complex>> eigenvalues;
  std::optional<SpectrumClass> spectrum_class;
  std::vector<int> ordering;
  std::optional<double> diagonalizer_condition;

  std::optional<MetricFamily> family;
  std::vector<MetricFlags> family_flags;
  std::optional<Metric> fundamental;
  std::string metric_selection;  // "supplied", "involutory-search", "hermitian-fallback"
  std::optional<Metric> eta_plus;
  std::optional<Metric> conjugate_metric;

  std::optional<SymmetrySuite> suite;
  std::optional<SuiteReport> suite_report;
  std::optional<P2T2> p2t2;
  std::vector<int> eta_signs;

  std::optional<GramReportSet> grams;

  std::map<std::string, double> residuals;
  std::vector<Verdict> verdicts;
  std::optional<ErrorInfo> error;

  bool all_pass() const;
  /// 0 on full success, otherwise the class of the error or first failing
  /// verdict.
  int exit_code() const;
};

/// Run the whole pipeline: eig -> classify -> metric family -> fundamental
/// metric -> normalize -> diagonalizer -> eta_plus -> biorthonormal system ->
/// symmetry suite -> inner products. Stops early (with a partial report) on
/// mixed spectra, degenerate spectra, or any module error.
AnalysisReport analyze(const CMatrix& H, const AnalyzeOptions& options = {});

}  // namespace pseudoherm

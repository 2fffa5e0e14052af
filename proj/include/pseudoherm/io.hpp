#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pseudoherm/analysis.hpp"
#include "pseudoherm/fixtures.hpp"

namespace pseudoherm {

/// On-disk matrix description:
///   {"n": int, "H": [[[re,im], ...], ...],
///    optional "eta": same shape, optional "phases": [[re,im], ...]}
struct MatrixFile {
  CMatrix H;
  std::optional<CMatrix> eta;
  std::vector<Complex> phases;  // unit factors, one per eigenvector
};

MatrixFile parse_matrix_file(const std::string& path);
MatrixFile parse_matrix_text(const std::string& text);

std::string write_matrix_text(const MatrixFile& file);
void write_matrix_file(const MatrixFile& file, const std::string& path);

/// Export a fixture in the matrix file format. When the fixture pins
/// eigenvector phases, the unit factors converting the default phase
/// convention onto the pinned vectors are included so an
/// `analyze --phases file` run reproduces the fixture's expected operators.
MatrixFile fixture_to_matrix_file(const Fixture& fixture, const Tolerance& tol = {});

/// Deterministic json rendering of a report: fixed key order, matrices as
/// nested [re, im] arrays.
std::string report_to_json(const AnalysisReport& report);

/// Human-ordered rendering: spectrum, metrics, suite, products. Matrices are
/// printed with 12 significant digits.
std::string report_to_markdown(const AnalysisReport& report);

}  // namespace pseudoherm

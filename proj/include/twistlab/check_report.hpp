#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "twistlab/matrix.hpp"

namespace twistlab {

enum class Status { kPass, kFail, kError };

/// What a suite expects of a check. Negative controls expect failure;
/// informational checks record a finding without gating the run.
enum class Expectation { kPass, kFail, kInformational };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kError: return "error";
  }
  return "?";
}

inline const char* to_string(Expectation e) {
  switch (e) {
    case Expectation::kPass: return "pass";
    case Expectation::kFail: return "expected-fail";
    case Expectation::kInformational: return "informational";
  }
  return "?";
}

struct Witness {
  std::size_t row = 0;
  std::size_t col = 0;
  std::string value;
};

/// Outcome of one verification. `residual` is the exact largest coefficient
/// magnitude over all residual entries (pass iff it is "0").
struct CheckReport {
  std::string name;
  Status status = Status::kPass;
  std::string residual = "0";
  std::optional<Witness> witness;
  std::string anchor;
  Expectation expectation = Expectation::kPass;
  std::string note;

  bool passed() const { return status == Status::kPass; }

  /// True when the outcome matches the expectation.
  bool as_expected() const {
    switch (expectation) {
      case Expectation::kPass: return status == Status::kPass;
      case Expectation::kFail: return status == Status::kFail;
      case Expectation::kInformational: return status != Status::kError;
    }
    return false;
  }

  CheckReport& expect(Expectation e) {
    expectation = e;
    return *this;
  }
  CheckReport& with_note(std::string n) {
    note = std::move(n);
    return *this;
  }
};

/// Builds a report from a residual matrix; the witness is the first entry
/// (row-major) of maximal height.
template <Scalar S>
CheckReport residual_check(std::string name, std::string anchor, const Matrix<S>& residual) {
  CheckReport r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  Rational best = 0;
  for (std::size_t i = 0; i < residual.rows(); ++i)
    for (std::size_t j = 0; j < residual.cols(); ++j) {
      const S& x = residual(i, j);
      if (x.is_zero()) continue;
      const Rational h = x.height();
      if (h > best) {
        best = h;
        r.witness = Witness{i, j, x.to_string()};
      }
    }
  r.status = sgn(best) == 0 ? Status::kPass : Status::kFail;
  r.residual = best.get_str();
  return r;
}

inline CheckReport boolean_check(std::string name, std::string anchor, bool ok, std::string note = {}) {
  CheckReport r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.status = ok ? Status::kPass : Status::kFail;
  r.residual = ok ? "0" : "1";
  r.note = std::move(note);
  return r;
}

inline CheckReport error_check(std::string name, std::string anchor, std::string what) {
  CheckReport r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.status = Status::kError;
  r.residual = "n/a";
  r.note = std::move(what);
  return r;
}

}  // namespace twistlab

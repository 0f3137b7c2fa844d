#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mmdg {

/// Where in the run a failure happened. Unset fields are omitted from the
/// rendered message.
struct ErrorContext {
  std::string case_name;
  std::optional<long> step;
  std::optional<int> stage;
  std::optional<int> element;
  std::optional<int> node;
  std::optional<double> x;
};

/// Base class for solver failures that carry run context.
class SolverError : public std::runtime_error {
 public:
  SolverError(std::string kind, std::string detail, ErrorContext ctx = {})
      : std::runtime_error(render(kind, detail, ctx)),
        kind_(std::move(kind)),
        detail_(std::move(detail)),
        ctx_(std::move(ctx)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  const ErrorContext& context() const noexcept { return ctx_; }

  SolverError with_stage(int stage) const {
    ErrorContext c = ctx_;
    c.stage = stage;
    return SolverError(kind_, detail_, c);
  }
  SolverError with_step(long step) const {
    ErrorContext c = ctx_;
    c.step = step;
    return SolverError(kind_, detail_, c);
  }
  SolverError with_case(const std::string& name) const {
    ErrorContext c = ctx_;
    c.case_name = name;
    return SolverError(kind_, detail_, c);
  }

  /// One machine-readable line: `error kind=... key=value ... detail="..."`.
  static std::string render(const std::string& kind, const std::string& detail,
                            const ErrorContext& c) {
    std::ostringstream os;
    os.precision(17);
    os << "error kind=" << kind;
    if (!c.case_name.empty()) os << " case=" << c.case_name;
    if (c.step) os << " step=" << *c.step;
    if (c.stage) os << " stage=" << *c.stage;
    if (c.element) os << " element=" << *c.element;
    if (c.node) os << " node=" << *c.node;
    if (c.x) os << " x=" << *c.x;
    os << " detail=\"" << detail << "\"";
    return os.str();
  }

 private:
  std::string kind_;
  std::string detail_;
  ErrorContext ctx_;
};

/// Nonpositive density or temperature at a node.
inline SolverError realizability_error(const std::string& detail,
                                       ErrorContext ctx = {}) {
  return SolverError("realizability", detail, std::move(ctx));
}

/// A boundary trace could not be resolved (e.g. missing ghost data).
inline SolverError boundary_error(const std::string& detail) {
  return SolverError("boundary", detail);
}

}  // namespace mmdg

#pragma once

#include "socrescale/cone.hpp"
#include "socrescale/socp.hpp"
#include "socrescale/solver.hpp"
#include "socrescale/verify.hpp"

#include <optional>
#include <string>

namespace socrescale {

inline constexpr const char* kFormatVersion = "soc-rescale/1";

/// Either a primal witness x or a dual witness (s, u); both optional.
struct Witness {
  std::optional<VectorXd> x;
  std::optional<VectorXd> s;
  std::optional<VectorXd> u;

  bool empty() const { return !x && !s && !u; }
};

struct Instance {
  MatrixXd a;
  ConeStructure cones;
  std::optional<VectorXd> b;
  std::optional<VectorXd> c;
  Witness witness;

  bool is_socp() const { return b.has_value() && c.has_value(); }
  StandardSocp socp() const;  // throws InvalidArgument without b and c
};

struct Certificate {
  SolveStatus status = SolveStatus::PrimalInterior;
  VectorXd x;            // primal_interior
  VectorXd s;            // dual_nonzero
  VectorXd u;            // dual_nonzero, may be empty
  Index block = 0;       // no_eps_interior
  double v_k = 0.0;
  double epsilon = 0.0;
  SolverStats stats;
};

Certificate make_certificate(const SolveResult& r, double epsilon);

std::string serialize_instance(const Instance& inst);
std::string serialize_certificate(const Certificate& cert);
std::string serialize_phase_result(const PhaseResult& r);

/// `source` names the input in ParseError messages.
Instance parse_instance(const std::string& text, const std::string& source = "<string>");
Certificate parse_certificate(const std::string& text, const std::string& source = "<string>");
PhaseResult parse_phase_result(const std::string& text, const std::string& source = "<string>");

/// "-" reads stdin / writes stdout.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

Instance read_instance(const std::string& path);
Certificate read_certificate(const std::string& path);

/// Checks a certificate against its instance. no_eps_interior claims get the
/// structural check only.
VerifyReport verify_certificate(const Instance& inst, const Certificate& cert, double tol);

}  // namespace socrescale

#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "mwsrpdt/types.hpp"

namespace mwsrpdt {

struct ModelStats {
  long long num_binary = 0;          // x plus y variables
  long long num_continuous = 0;      // q variables
  long long num_general_integer = 0; // the makespan variable p
  long long num_constraints = 0;
  int horizon = 0;
};

// Writes the day-indexed routing model as LP text: minimize p subject to
// task coverage, precedence in absolute time, arrival/flow-conservation
// bounds on the q moments, q <= D x coupling, degree constraints tying x to
// y, one depot departure per team-day, and the makespan link. Variables are
// named x_k_h_u_v / q_k_h_u_v / y_k_h_i_a / p with vertex ids `0` (depot) and
// `i.a` (task vertices). Teams that cannot execute a task get its y fixed to
// 0 and the x/q columns into that vertex omitted. Output is byte-identical
// for identical inputs; coefficients carry 9 significant digits.
//
// A horizon too small for feasibility is not detectable at emission time; it
// surfaces as an infeasible LP when solved.
// Throws InvalidConfigError when horizon < 1.
ModelStats emit_model(const Instance& inst, int horizon, std::ostream& out);

// Grammar audit of an emitted file (sections in order, every constraint of
// the form `name: [sign] [coef] var ... sense rhs`), plus the counts needed
// to cross-check ModelStats.
struct LpAudit {
  bool ok = true;
  std::string reason;            // first grammar violation, empty when ok
  long long num_constraints = 0;
  long long num_bounds = 0;
  std::vector<std::string> generals;
  std::vector<std::string> binaries;
  std::set<std::string> variables;  // every variable referenced anywhere
};

LpAudit lint_lp(std::istream& in);

}  // namespace mwsrpdt

#pragma once

#include <iosfwd>
#include <string>

#include "mwsrpdt/types.hpp"

namespace mwsrpdt {

struct GeneratorConfig {
  int n = 0;  // vertex count including the depot; customers = n - 1
  InstanceType type = InstanceType::A;
  std::uint64_t seed = 0;
};

// Deterministically generates a type A/B/C instance: K = 3 teams, D = 8 hour
// days, coordinates uniform on the 100x100 grid, services with layered
// precedence, and per-(team, service, task) durations shared by all customers
// requesting the service. Pure function of (n, type, seed).
// Throws InvalidConfigError when cfg.n < 2.
Instance generate(const GeneratorConfig& cfg);

// Line-oriented text format; see README. write/read round-trip exactly.
void write_instance(const Instance& inst, std::ostream& out);
// Throws ParseError (with line number) on malformed input.
Instance read_instance(std::istream& in);

// File helpers; throw IoError when the path cannot be opened.
void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

// Shortest fixed-point decimal (at most 6 fractional digits) that parses back
// to exactly the same double; used for durations and the day length.
std::string format_hours(double value);

}  // namespace mwsrpdt

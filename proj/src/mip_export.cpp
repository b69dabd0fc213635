#include "mwsrpdt/mip_export.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "mwsrpdt/errors.hpp"

namespace mwsrpdt {

namespace {

std::string vertex_name(const ExtendedVertex& v) {
  if (v.is_depot()) return "0";
  return std::to_string(v.customer) + "." + std::to_string(v.task);
}

std::string coefficient(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

// Accumulates one constraint or objective row and writes it with wrapping;
// continuation lines start with a space so they cannot be mistaken for a new
// row.
class Row {
 public:
  Row(std::ostream& out, std::string name) : out_(out), line_(" " + std::move(name) + ":") {}

  // coef == 1 / -1 emit bare signed variables; coef == 0 is skipped.
  void term(double coef, const std::string& var) {
    if (coef == 0.0) return;
    std::string tok;
    if (first_term_ && coef > 0.0)
      tok = coef == 1.0 ? var : coefficient(coef) + " " + var;
    else if (coef > 0.0)
      tok = coef == 1.0 ? "+ " + var : "+ " + coefficient(coef) + " " + var;
    else
      tok = coef == -1.0 ? "- " + var : "- " + coefficient(-coef) + " " + var;
    append(tok);
    first_term_ = false;
  }

  bool has_terms() const { return !first_term_; }

  void finish(const std::string& sense, double rhs) {
    append(sense + " " + coefficient(rhs));
    out_ << line_ << '\n';
  }

 private:
  void append(const std::string& tok) {
    if (line_.size() + tok.size() + 1 > 76) {
      out_ << line_ << '\n';
      line_ = "  ";
    }
    line_ += " " + tok;
  }

  std::ostream& out_;
  std::string line_;
  bool first_term_ = true;
};

}  // namespace

ModelStats emit_model(const Instance& inst, int horizon, std::ostream& out) {
  if (horizon < 1) throw InvalidConfigError("horizon must be at least 1");

  // Extended vertices: depot first, then tasks in (customer, task) order.
  std::vector<ExtendedVertex> vertices;
  vertices.push_back(ExtendedVertex::depot());
  for (int t = 0; t < inst.task_count(); ++t)
    vertices.push_back(ExtendedVertex::of(inst.task_at(t)));
  const int M = static_cast<int>(vertices.size());
  const double D = inst.day_length;
  const int K = inst.num_teams;
  const int H = horizon;

  auto finite_time = [&inst](int k, const ExtendedVertex& v) -> std::optional<double> {
    if (v.is_depot()) return std::nullopt;
    return inst.task_time(k, v.ref());
  };
  // Travel columns into v exist for team k unless v is a task the team
  // cannot execute; columns into the depot always exist.
  auto arc_exists = [&](int k, int u, int v) {
    if (u == v) return false;
    return vertices[static_cast<std::size_t>(v)].is_depot() ||
           finite_time(k, vertices[static_cast<std::size_t>(v)]).has_value();
  };
  auto xname = [&](int k, int h, int u, int v) {
    return "x_" + std::to_string(k) + "_" + std::to_string(h) + "_" +
           vertex_name(vertices[static_cast<std::size_t>(u)]) + "_" +
           vertex_name(vertices[static_cast<std::size_t>(v)]);
  };
  auto qname = [&](int k, int h, int u, int v) {
    return "q_" + std::to_string(k) + "_" + std::to_string(h) + "_" +
           vertex_name(vertices[static_cast<std::size_t>(u)]) + "_" +
           vertex_name(vertices[static_cast<std::size_t>(v)]);
  };
  auto yname = [&](int k, int h, const ExtendedVertex& v) {
    return "y_" + std::to_string(k) + "_" + std::to_string(h) + "_" +
           std::to_string(v.customer) + "_" + std::to_string(v.task);
  };

  ModelStats stats;
  stats.horizon = H;
  stats.num_general_integer = 1;  // p

  out << "Minimize\n";
  out << " obj: p\n";
  out << "Subject To\n";

  // Task coverage: every task executed exactly once over teams and days.
  for (int v = 1; v < M; ++v) {
    const ExtendedVertex& tv = vertices[static_cast<std::size_t>(v)];
    Row row(out, "c2_" + vertex_name(tv));
    for (int k = 1; k <= K; ++k)
      for (int h = 1; h <= H; ++h) row.term(1.0, yname(k, h, tv));
    row.finish("=", 1.0);
    ++stats.num_constraints;
  }

  // Precedence: the absolute start of `after` is at least the absolute
  // completion of `before`.
  for (int customer = 2; customer <= inst.n; ++customer) {
    const Service& svc = inst.service_of(customer);
    for (const Dependency& dep : svc.deps) {
      const ExtendedVertex va = ExtendedVertex::of({customer, dep.after});
      const ExtendedVertex vb = ExtendedVertex::of({customer, dep.before});
      const int ia = inst.task_index(va.ref()) + 1;  // position in `vertices`
      const int ib = inst.task_index(vb.ref()) + 1;
      Row row(out, "c3_" + std::to_string(customer) + "." + std::to_string(dep.after) + "." +
                       std::to_string(dep.before));
      for (int k = 1; k <= K; ++k)
        for (int h = 1; h <= H; ++h) {
          row.term(D * (h - 1), yname(k, h, va));
          for (int u = 0; u < M; ++u)
            if (arc_exists(k, u, ia)) row.term(1.0, qname(k, h, u, ia));
        }
      for (int k = 1; k <= K; ++k) {
        const auto t = finite_time(k, vb);
        for (int h = 1; h <= H; ++h) {
          if (t) row.term(-(D * (h - 1) + *t), yname(k, h, vb));
          for (int u = 0; u < M; ++u)
            if (arc_exists(k, u, ib)) row.term(-1.0, qname(k, h, u, ib));
        }
      }
      row.finish(">=", 0.0);
      ++stats.num_constraints;
    }
  }

  // Departure arrival time: the moment of a first-arc arrival is at least the
  // travel from the depot.
  for (int k = 1; k <= K; ++k)
    for (int h = 1; h <= H; ++h)
      for (int v = 1; v < M; ++v) {
        if (!arc_exists(k, 0, v)) continue;
        Row row(out, "c4_" + std::to_string(k) + "_" + std::to_string(h) + "_" +
                         vertex_name(vertices[static_cast<std::size_t>(v)]));
        row.term(1.0, qname(k, h, 0, v));
        row.term(-inst.extended_travel_time(vertices[0], vertices[static_cast<std::size_t>(v)]),
                 xname(k, h, 0, v));
        row.finish(">=", 0.0);
        ++stats.num_constraints;
      }

  // Flow conservation at every task vertex: incoming moment + travel out +
  // service time is at most the outgoing moment.
  for (int k = 1; k <= K; ++k)
    for (int h = 1; h <= H; ++h)
      for (int v = 1; v < M; ++v) {
        const ExtendedVertex& tv = vertices[static_cast<std::size_t>(v)];
        Row row(out, "c5_" + std::to_string(k) + "_" + std::to_string(h) + "_" + vertex_name(tv));
        for (int u = 0; u < M; ++u)
          if (arc_exists(k, u, v)) row.term(1.0, qname(k, h, u, v));
        for (int u = 0; u < M; ++u)
          if (arc_exists(k, v, u))
            row.term(inst.extended_travel_time(tv, vertices[static_cast<std::size_t>(u)]),
                     xname(k, h, v, u));
        if (const auto t = finite_time(k, tv)) row.term(*t, yname(k, h, tv));
        for (int u = 0; u < M; ++u)
          if (arc_exists(k, v, u)) row.term(-1.0, qname(k, h, v, u));
        row.finish("<=", 0.0);
        ++stats.num_constraints;
      }

  // Moments are enabled only on used arcs and bounded by the day length.
  for (int k = 1; k <= K; ++k)
    for (int h = 1; h <= H; ++h)
      for (int u = 0; u < M; ++u)
        for (int v = 0; v < M; ++v) {
          if (!arc_exists(k, u, v)) continue;
          Row row(out, "c6_" + std::to_string(k) + "_" + std::to_string(h) + "_" +
                           vertex_name(vertices[static_cast<std::size_t>(u)]) + "_" +
                           vertex_name(vertices[static_cast<std::size_t>(v)]));
          row.term(1.0, qname(k, h, u, v));
          row.term(-D, xname(k, h, u, v));
          row.finish("<=", 0.0);
          ++stats.num_constraints;
        }

  // Degree constraints: a visited vertex has exactly one incoming and one
  // outgoing arc of its team-day.
  for (int k = 1; k <= K; ++k)
    for (int h = 1; h <= H; ++h)
      for (int v = 1; v < M; ++v) {
        const ExtendedVertex& tv = vertices[static_cast<std::size_t>(v)];
        Row in_row(out, "c7_" + std::to_string(k) + "_" + std::to_string(h) + "_" +
                            vertex_name(tv));
        for (int u = 0; u < M; ++u)
          if (arc_exists(k, u, v)) in_row.term(1.0, xname(k, h, u, v));
        in_row.term(-1.0, yname(k, h, tv));
        in_row.finish("=", 0.0);
        ++stats.num_constraints;
        Row out_row(out, "c8_" + std::to_string(k) + "_" + std::to_string(h) + "_" +
                             vertex_name(tv));
        for (int u = 0; u < M; ++u)
          if (arc_exists(k, v, u)) out_row.term(1.0, xname(k, h, v, u));
        out_row.term(-1.0, yname(k, h, tv));
        out_row.finish("=", 0.0);
        ++stats.num_constraints;
      }

  // One depot departure per team-day.
  for (int k = 1; k <= K; ++k)
    for (int h = 1; h <= H; ++h) {
      Row row(out,
              "c9_" + std::to_string(k) + "_" + std::to_string(h));
      for (int v = 1; v < M; ++v)
        if (arc_exists(k, 0, v)) row.term(1.0, xname(k, h, 0, v));
      if (!row.has_terms()) continue;  // team with no executable task
      row.finish("<=", 1.0);
      ++stats.num_constraints;
    }

  // Makespan: p dominates the day index of every departure.
  for (int k = 1; k <= K; ++k)
    for (int h = 1; h <= H; ++h) {
      Row row(out, "c10_" + std::to_string(k) + "_" + std::to_string(h));
      row.term(1.0, "p");
      for (int v = 1; v < M; ++v)
        if (arc_exists(k, 0, v)) row.term(-static_cast<double>(h), xname(k, h, 0, v));
      row.finish(">=", 0.0);
      ++stats.num_constraints;
    }

  out << "Bounds\n";
  for (int k = 1; k <= K; ++k)
    for (int h = 1; h <= H; ++h)
      for (int v = 1; v < M; ++v) {
        const ExtendedVertex& tv = vertices[static_cast<std::size_t>(v)];
        if (!finite_time(k, tv)) out << ' ' << yname(k, h, tv) << " = 0\n";
      }

  out << "Generals\n p\n";

  out << "Binaries\n";
  for (int k = 1; k <= K; ++k)
    for (int h = 1; h <= H; ++h)
      for (int u = 0; u < M; ++u)
        for (int v = 0; v < M; ++v)
          if (arc_exists(k, u, v)) {
            out << ' ' << xname(k, h, u, v) << '\n';
            ++stats.num_binary;
            ++stats.num_continuous;  // every x column has a matching q column
          }
  for (int k = 1; k <= K; ++k)
    for (int h = 1; h <= H; ++h)
      for (int v = 1; v < M; ++v) {
        out << ' ' << yname(k, h, vertices[static_cast<std::size_t>(v)]) << '\n';
        ++stats.num_binary;
      }
  out << "End\n";
  return stats;
}

namespace {

bool valid_identifier(const std::string& tok) {
  if (tok.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(tok[0])) && tok[0] != '_') return false;
  for (char c : tok)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.') return false;
  return true;
}

bool parse_number(const std::string& tok, double& value) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  return ec == std::errc() && ptr == tok.data() + tok.size() && std::isfinite(value);
}

struct Token {
  std::string text;
  int line;
};

}  // namespace

LpAudit lint_lp(std::istream& in) {
  LpAudit audit;
  auto fail = [&audit](int line, const std::string& reason) {
    audit.ok = false;
    audit.reason = "line " + std::to_string(line) + ": " + reason;
  };

  // Split into sections on the emitted keywords, tokenizing everything else.
  std::vector<std::string> lines;
  {
    std::string raw;
    while (std::getline(in, raw)) {
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      lines.push_back(raw);
    }
  }
  const std::vector<std::string> section_order = {"Minimize", "Subject To", "Bounds",
                                                  "Generals", "Binaries", "End"};
  std::vector<std::vector<Token>> sections(section_order.size());
  std::size_t current = 0;
  bool seen_minimize = false;
  bool seen_end = false;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string& raw = lines[li];
    std::string trimmed = raw;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();
    std::size_t begin = 0;
    while (begin < trimmed.size() && std::isspace(static_cast<unsigned char>(trimmed[begin])))
      ++begin;
    trimmed = trimmed.substr(begin);
    if (trimmed.empty() || trimmed[0] == '\\') continue;  // blank or comment
    const auto found =
        std::find(section_order.begin(), section_order.end(), trimmed);
    if (found != section_order.end()) {
      const std::size_t index = static_cast<std::size_t>(found - section_order.begin());
      if (index == 0) seen_minimize = true;
      if (index == section_order.size() - 1) seen_end = true;
      if (index < current) {
        fail(static_cast<int>(li + 1), "section '" + trimmed + "' out of order");
        return audit;
      }
      current = index;
      continue;
    }
    if (!seen_minimize) {
      fail(static_cast<int>(li + 1), "content before the Minimize section");
      return audit;
    }
    std::istringstream split(raw);
    std::string tok;
    while (split >> tok) sections[current].push_back({tok, static_cast<int>(li + 1)});
  }
  if (!seen_minimize) {
    fail(static_cast<int>(lines.size()), "missing Minimize section");
    return audit;
  }

  // Expression parser shared by the objective and the constraints: validates
  // `name: [sign] [coef] var ...` and an optional trailing `sense rhs`.
  auto parse_rows = [&](const std::vector<Token>& toks, bool needs_sense,
                        long long& row_count) -> bool {
    std::size_t i = 0;
    while (i < toks.size()) {
      const Token& head = toks[i];
      if (head.text.size() < 2 || head.text.back() != ':' ||
          !valid_identifier(head.text.substr(0, head.text.size() - 1))) {
        fail(head.line, "expected 'name:' to open a row, got '" + head.text + "'");
        return false;
      }
      ++i;
      bool any_term = false;
      bool closed = false;
      while (i < toks.size()) {
        const std::string& t = toks[i].text;
        if (t == "<=" || t == ">=" || t == "=") {
          if (!needs_sense) {
            fail(toks[i].line, "unexpected relation in the objective");
            return false;
          }
          if (!any_term) {
            fail(toks[i].line, "relation before any term");
            return false;
          }
          ++i;
          double rhs;
          if (i >= toks.size() || !parse_number(toks[i].text, rhs)) {
            fail(toks[i - 1].line, "missing numeric right-hand side");
            return false;
          }
          ++i;
          closed = true;
          break;
        }
        std::size_t j = i;
        if (t == "+" || t == "-") ++j;
        if (j >= toks.size()) {
          fail(toks[i].line, "dangling sign");
          return false;
        }
        double coef;
        if (parse_number(toks[j].text, coef)) ++j;
        if (j >= toks.size() || !valid_identifier(toks[j].text)) {
          fail(toks[i].line, "expected a variable name");
          return false;
        }
        audit.variables.insert(toks[j].text);
        any_term = true;
        i = j + 1;
        if (i < toks.size() && toks[i].text.back() == ':') break;  // next row
      }
      if (needs_sense && !closed) {
        fail(toks.empty() ? 0 : toks.back().line, "row without a relation");
        return false;
      }
      if (!any_term && !needs_sense) {
        fail(head.line, "objective without any term");
        return false;
      }
      ++row_count;
    }
    return true;
  };

  long long objective_rows = 0;
  if (!parse_rows(sections[0], false, objective_rows)) return audit;
  if (objective_rows != 1) {
    fail(0, "expected exactly one objective row");
    return audit;
  }
  if (!parse_rows(sections[1], true, audit.num_constraints)) return audit;

  // Bounds: lines of the form `var = num`, `var <= num`, `num <= var <= num`.
  {
    const auto& toks = sections[2];
    std::size_t i = 0;
    while (i < toks.size()) {
      double ignored;
      if (parse_number(toks[i].text, ignored)) {  // num <= var <= num
        if (i + 4 >= toks.size() || toks[i + 1].text != "<=" ||
            !valid_identifier(toks[i + 2].text) || toks[i + 3].text != "<=" ||
            !parse_number(toks[i + 4].text, ignored)) {
          fail(toks[i].line, "malformed range bound");
          return audit;
        }
        audit.variables.insert(toks[i + 2].text);
        i += 5;
      } else {
        if (i + 2 >= toks.size() || !valid_identifier(toks[i].text) ||
            (toks[i + 1].text != "=" && toks[i + 1].text != "<=" && toks[i + 1].text != ">=") ||
            !parse_number(toks[i + 2].text, ignored)) {
          fail(toks[i].line, "malformed bound");
          return audit;
        }
        audit.variables.insert(toks[i].text);
        i += 3;
      }
      ++audit.num_bounds;
    }
  }

  for (const Token& t : sections[3]) {
    if (!valid_identifier(t.text)) {
      fail(t.line, "invalid name in Generals: '" + t.text + "'");
      return audit;
    }
    audit.generals.push_back(t.text);
    audit.variables.insert(t.text);
  }
  for (const Token& t : sections[4]) {
    if (!valid_identifier(t.text)) {
      fail(t.line, "invalid name in Binaries: '" + t.text + "'");
      return audit;
    }
    audit.binaries.push_back(t.text);
    audit.variables.insert(t.text);
  }
  if (!seen_end) {
    fail(static_cast<int>(lines.size()), "missing End terminator");
    return audit;
  }
  if (!sections[5].empty()) {
    fail(sections[5].front().line, "content after End");
    return audit;
  }
  return audit;
}

}  // namespace mwsrpdt

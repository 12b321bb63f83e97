#include "pqe/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace pqe::io {

namespace {

struct Numbered {
  int line = 0;
  std::vector<int> values;
};

struct Scanned {
  std::vector<std::string> header;
  int header_line = 0;
  std::vector<Numbered> specials;
  std::vector<Numbered> clauses;
};

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

int to_int(std::string_view tok, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  return v;
}

// Splits the text into a `p` header, `special`-tagged lines and clauses.
// Clauses may span lines and end at 0.
Scanned scan(std::string_view text, std::string_view special) {
  Scanned out;
  Numbered pending;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto toks = split(line);
    if (toks.empty() || toks[0] == "c" || toks[0][0] == 'c') continue;
    if (toks[0] == "p") {
      if (!out.header.empty()) throw ParseError(line_no, "second header line");
      if (!pending.values.empty() || !out.clauses.empty() || !out.specials.empty())
        throw ParseError(line_no, "header must come first");
      for (auto t : toks) out.header.emplace_back(t);
      out.header_line = line_no;
      continue;
    }
    if (out.header.empty()) throw ParseError(line_no, "missing header");
    if (toks[0] == special) {
      if (!pending.values.empty()) throw ParseError(line_no, "unterminated clause");
      Numbered n{line_no, {}};
      for (std::size_t i = 1; i < toks.size(); ++i) n.values.push_back(to_int(toks[i], line_no));
      if (n.values.empty() || n.values.back() != 0)
        throw ParseError(line_no, "'" + std::string(special) + "' line must end with 0");
      n.values.pop_back();
      for (int v : n.values)
        if (v == 0) throw ParseError(line_no, "0 inside '" + std::string(special) + "' line");
      out.specials.push_back(std::move(n));
      continue;
    }
    for (auto t : toks) {
      int v = to_int(t, line_no);
      if (pending.values.empty()) pending.line = line_no;
      if (v == 0) {
        out.clauses.push_back(std::move(pending));
        pending = {};
      } else {
        pending.values.push_back(v);
      }
    }
  }
  if (!pending.values.empty()) throw ParseError(pending.line, "unterminated clause");
  if (out.header.empty()) throw ParseError(line_no, "missing header");
  return out;
}

std::vector<int> header_counts(const Scanned& s, std::string_view format, std::size_t fields) {
  if (s.header.size() != fields + 2 || s.header[1] != format)
    throw ParseError(s.header_line, "expected 'p " + std::string(format) + "' with " +
                                        std::to_string(fields) + " counts");
  std::vector<int> out;
  for (std::size_t i = 2; i < s.header.size(); ++i) {
    int v = to_int(s.header[i], s.header_line);
    if (v < 0) throw ParseError(s.header_line, "negative count");
    out.push_back(v);
  }
  return out;
}

Clause make_clause(ClauseId id, const Numbered& n, int max_var) {
  for (int l : n.values)
    if (std::abs(l) > max_var)
      throw ParseError(n.line, "literal " + std::to_string(l) + " exceeds variable count");
  try {
    return Clause::from_dimacs(id, n.values);
  } catch (const TautologyError&) {
    throw ParseError(n.line, "tautological clause");
  }
}

void put_clause(std::ostringstream& os, const Clause& c) {
  for (int l : c.to_dimacs()) os << l << ' ';
  os << "0\n";
}

void put_comments(std::ostringstream& os, const std::vector<std::string>& comments) {
  for (auto& c : comments) os << "c " << c << '\n';
}

}  // namespace

EcnfProblem parse_pcnf(std::string_view text) {
  Scanned s = scan(text, "e");
  auto counts = header_counts(s, "pcnf", 3);
  const int vars = counts[0], n_clauses = counts[1], f_count = counts[2];
  if (int(s.clauses.size()) != n_clauses)
    throw ParseError(s.header_line, "header announces " + std::to_string(n_clauses) +
                                        " clauses, found " + std::to_string(s.clauses.size()));
  if (s.specials.size() != 1)
    throw ParseError(s.specials.empty() ? s.header_line : s.specials[1].line,
                     "exactly one 'e' line required");
  if (f_count > n_clauses)
    throw SemanticError("f_count " + std::to_string(f_count) + " exceeds clause count " +
                        std::to_string(n_clauses));

  std::vector<Var> xs;
  for (int v : s.specials[0].values) {
    if (v < 1 || v > vars)
      throw SemanticError("quantified variable " + std::to_string(v) + " outside 1.." +
                          std::to_string(vars));
    xs.push_back(v);
  }
  if (std::set<Var>(xs.begin(), xs.end()).size() != xs.size())
    throw SemanticError("repeated quantified variable");

  EcnfProblem p;
  p.x_vars = VarSet(std::move(xs));
  p.f.var_count = p.g.var_count = vars;
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < s.clauses.size(); ++i) {
    Clause c = make_clause(ClauseId(i + 1), s.clauses[i], vars);
    if (!seen.insert(c.to_dimacs()).second)
      throw ParseError(s.clauses[i].line, "duplicate clause");
    (int(i) < f_count ? p.f : p.g).clauses.push_back(std::move(c));
  }
  return p;
}

CnfFormula parse_dimacs(std::string_view text) {
  Scanned s = scan(text, "\x01");
  auto counts = header_counts(s, "cnf", 2);
  if (int(s.clauses.size()) != counts[1])
    throw ParseError(s.header_line, "header announces " + std::to_string(counts[1]) +
                                        " clauses, found " + std::to_string(s.clauses.size()));
  CnfFormula h;
  h.var_count = counts[0];
  for (std::size_t i = 0; i < s.clauses.size(); ++i)
    h.clauses.push_back(make_clause(ClauseId(i + 1), s.clauses[i], counts[0]));
  return h;
}

mc::TransitionSystem parse_mct(std::string_view text) {
  Scanned s = scan(text, "i");
  auto counts = header_counts(s, "mct", 3);
  const int n = counts[0], n_t = counts[1], n_bad = counts[2];
  if (int(s.clauses.size()) != n_t + n_bad)
    throw ParseError(s.header_line, "header announces " + std::to_string(n_t + n_bad) +
                                        " clauses, found " + std::to_string(s.clauses.size()));
  if (s.specials.size() != 1)
    throw ParseError(s.specials.empty() ? s.header_line : s.specials[1].line,
                     "exactly one 'i' line required");
  mc::TransitionSystem ts;
  ts.n = n;
  for (int l : s.specials[0].values) {
    if (std::abs(l) > n) throw SemanticError("init literal " + std::to_string(l) + " outside 1.." + std::to_string(n));
    Lit lit = Lit::from_dimacs(l);
    if (ts.init.get(lit.var()).value_or(lit.satisfying_value()) != lit.satisfying_value())
      throw SemanticError("contradictory init cube");
    ts.init.set(lit.var(), lit.satisfying_value());
  }
  ts.t.var_count = 2 * n;
  ts.bad.var_count = n;
  for (int i = 0; i < n_t + n_bad; ++i) {
    const bool in_t = i < n_t;
    Clause c = make_clause(ClauseId(i + 1), s.clauses[i], 2 * n);
    if (!in_t)
      for (Lit l : c.lits())
        if (l.var() > n) throw SemanticError("bad-state clause uses next-state variable");
    (in_t ? ts.t : ts.bad).clauses.push_back(std::move(c));
  }
  return ts;
}

std::string write_pcnf(const EcnfProblem& p, const std::vector<std::string>& comments) {
  std::ostringstream os;
  put_comments(os, comments);
  os << "p pcnf " << p.var_count() << ' ' << p.f.size() + p.g.size() << ' ' << p.f.size() << '\n';
  os << 'e';
  for (Var v : p.x_vars.vars()) os << ' ' << v;
  os << " 0\n";
  for (auto& c : p.f.clauses) put_clause(os, c);
  for (auto& c : p.g.clauses) put_clause(os, c);
  return os.str();
}

std::string write_dimacs(const CnfFormula& h, const std::vector<std::string>& comments) {
  std::ostringstream os;
  put_comments(os, comments);
  std::size_t count = 0;
  for (auto& c : h.clauses) count += !c.is_true();
  os << "p cnf " << h.var_count << ' ' << count << '\n';
  for (auto& c : h.clauses)
    if (!c.is_true()) put_clause(os, c);
  return os.str();
}

std::string write_mct(const mc::TransitionSystem& ts, const std::vector<std::string>& comments) {
  std::ostringstream os;
  put_comments(os, comments);
  os << "p mct " << ts.n << ' ' << ts.t.size() << ' ' << ts.bad.size() << '\n';
  os << 'i';
  for (auto [v, b] : ts.init.pairs()) os << ' ' << (b ? v : -v);
  os << " 0\n";
  for (auto& c : ts.t.clauses) put_clause(os, c);
  for (auto& c : ts.bad.clauses) put_clause(os, c);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pqe::io

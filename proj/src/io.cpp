#include "cspw/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cspw/errors.hpp"

namespace cspw {

namespace {

/// Splits a line into whitespace-separated tokens after dropping a `#` comment.
std::vector<std::string> tokens_of(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

long parse_int(const std::string& s, std::size_t line, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer for " + what + ", got '" + s + "'");
  }
  if (used != s.size()) throw ParseError(line, "expected integer for " + what + ", got '" + s + "'");
  return v;
}

int parse_bounded(const std::string& s, std::size_t line, const std::string& what, long lo, long hi) {
  long v = parse_int(s, line, what);
  if (v < lo || v > hi) {
    throw ParseError(line, what + " " + s + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  int d = -1, order = -1, n = -1;
  bool header = false;
  std::vector<TableFunction> fns;
  std::vector<std::pair<std::string, std::vector<int>>> applies;
  std::vector<std::size_t> apply_lines;
  std::set<std::string> seen_entries;
  bool in_fn = false;
  std::size_t fn_start = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokens_of(line);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "cspw" || tok[1] != "1") throw ParseError(lineno, "expected header 'cspw 1'");
      header = true;
      continue;
    }
    if (in_fn) {
      if (tok.size() == 1 && tok[0] == "end") {
        in_fn = false;
        continue;
      }
      TableFunction& f = fns.back();
      std::size_t sep = 0;
      while (sep < tok.size() && tok[sep] != ":=") ++sep;
      if (sep == tok.size()) throw ParseError(lineno, "expected '<a1> ... <ar> := <value>' or 'end'");
      if (static_cast<int>(sep) != f.arity()) {
        throw ParseError(lineno, "entry has " + std::to_string(sep) + " indices but " + f.name() + " has arity " +
                                     std::to_string(f.arity()));
      }
      if (sep + 1 == tok.size()) throw ParseError(lineno, "missing value after ':='");
      Tuple x;
      for (std::size_t i = 0; i < sep; ++i) x.push_back(parse_bounded(tok[i], lineno, "domain value", 0, d - 1));
      std::string expr;
      for (std::size_t i = sep + 1; i < tok.size(); ++i) expr += tok[i];
      CycloValue v;
      try {
        v = CycloValue::parse(expr, order);
      } catch (const Error& e) {
        throw ParseError(lineno, e.what());
      }
      if (!seen_entries.insert(f.name() + format_tuple(x)).second) {
        throw ParseError(lineno, "duplicate entry " + format_tuple(x));
      }
      f.set(x, v);
      continue;
    }
    const std::string& cmd = tok[0];
    if (cmd == "domain" || cmd == "root" || cmd == "vars") {
      if (tok.size() != 2) throw ParseError(lineno, "'" + cmd + "' takes one integer");
      int& slot = cmd == "domain" ? d : cmd == "root" ? order : n;
      if (slot >= 0) throw ParseError(lineno, "duplicate '" + cmd + "'");
      slot = parse_bounded(tok[1], lineno, cmd, cmd == "vars" ? 0 : 1, cmd == "root" ? 100000 : 1 << 20);
      if (cmd == "vars" && (d < 0 || order < 0)) throw ParseError(lineno, "'vars' before 'domain' and 'root'");
    } else if (cmd == "fn") {
      if (d < 0 || order < 0) throw ParseError(lineno, "'fn' before 'domain' and 'root'");
      if (n >= 0) throw ParseError(lineno, "'fn' after 'vars'");
      if (tok.size() != 3) throw ParseError(lineno, "expected 'fn <name> <arity>'");
      for (const auto& f : fns) {
        if (f.name() == tok[1]) throw ParseError(lineno, "duplicate function " + tok[1]);
      }
      int r = parse_bounded(tok[2], lineno, "arity", 0, 64);
      fns.emplace_back(tok[1], r, d, order);
      in_fn = true;
      fn_start = lineno;
    } else if (cmd == "apply") {
      if (n < 0) throw ParseError(lineno, "'apply' before 'vars'");
      if (tok.size() < 2) throw ParseError(lineno, "expected 'apply <name> <vars...>'");
      const TableFunction* f = nullptr;
      for (const auto& g : fns) {
        if (g.name() == tok[1]) f = &g;
      }
      if (!f) throw ParseError(lineno, "unknown function " + tok[1]);
      if (static_cast<int>(tok.size()) - 2 != f->arity()) {
        throw ParseError(lineno, "apply " + tok[1] + " has " + std::to_string(tok.size() - 2) + " variables, arity is " +
                                     std::to_string(f->arity()));
      }
      std::vector<int> vars;
      for (std::size_t i = 2; i < tok.size(); ++i) vars.push_back(parse_bounded(tok[i], lineno, "variable", 0, n - 1));
      applies.emplace_back(tok[1], std::move(vars));
      apply_lines.push_back(lineno);
    } else {
      throw ParseError(lineno, "unknown directive '" + cmd + "'");
    }
  }
  if (!header) throw ParseError(lineno + 1, "missing header 'cspw 1'");
  if (in_fn) throw ParseError(fn_start, "function block without 'end'");
  if (d < 0) throw ParseError(lineno + 1, "missing 'domain'");
  if (order < 0) throw ParseError(lineno + 1, "missing 'root'");
  if (n < 0) throw ParseError(lineno + 1, "missing 'vars'");
  Instance inst(d, order, n);
  for (auto& f : fns) inst.add_function(std::move(f));
  for (auto& [name, vars] : applies) inst.apply(name, std::move(vars));
  return inst;
}

Instance parse_instance_string(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

Instance load_instance(const std::string& path) {
  auto in = open_file(path);
  return parse_instance(in);
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "cspw 1\n";
  out << "domain " << inst.domain() << "\n";
  out << "root " << inst.order() << "\n";
  for (const auto& f : inst.library()) {
    out << "fn " << f.name() << " " << f.arity() << "\n";
    for (const auto& [code, v] : f.entries()) {
      Tuple x = decode_tuple(code, f.domain(), f.arity());
      for (int a : x) out << a << " ";
      out << ":= " << v.promoted(inst.order()).to_string() << "\n";
    }
    out << "end\n";
  }
  out << "vars " << inst.num_vars() << "\n";
  for (const auto& c : inst.constraints()) {
    out << "apply " << inst.library()[c.fn].name();
    for (int v : c.vars) out << " " << v;
    out << "\n";
  }
  return out.str();
}

MaltsevMap parse_phi(std::istream& in, int d) {
  std::vector<int> table(static_cast<std::size_t>(d) * d * d, -1);
  std::vector<std::size_t> seen(table.size(), 0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokens_of(line);
    if (tok.empty()) continue;
    if (tok.size() != 5 || tok[3] != "->") throw ParseError(lineno, "expected 'a b c -> v'");
    int a = parse_bounded(tok[0], lineno, "domain value", 0, d - 1);
    int b = parse_bounded(tok[1], lineno, "domain value", 0, d - 1);
    int c = parse_bounded(tok[2], lineno, "domain value", 0, d - 1);
    int v = parse_bounded(tok[4], lineno, "domain value", 0, d - 1);
    std::size_t idx = (static_cast<std::size_t>(a) * d + b) * d + c;
    if (seen[idx]) throw ParseError(lineno, "duplicate triple " + tok[0] + " " + tok[1] + " " + tok[2]);
    seen[idx] = lineno;
    if (b == c && v != a) throw ParseError(lineno, "phi(a,b,b) must equal a");
    if (a == b && v != c) throw ParseError(lineno, "phi(b,b,a) must equal a");
    table[idx] = v;
  }
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        int& slot = table[(a * d + b) * d + c];
        if (slot >= 0) continue;
        if (b == c) {
          slot = a;
        } else if (a == b) {
          slot = c;
        } else {
          throw ParseError(lineno + 1, "missing triple " + std::to_string(a) + " " + std::to_string(b) + " " +
                                           std::to_string(c));
        }
      }
    }
  }
  return MaltsevMap(d, std::move(table));
}

MaltsevMap parse_phi_string(const std::string& text, int d) {
  std::istringstream in(text);
  return parse_phi(in, d);
}

MaltsevMap load_phi(const std::string& path, int d) {
  auto in = open_file(path);
  return parse_phi(in, d);
}

std::string write_phi(const MaltsevMap& phi) {
  std::ostringstream out;
  const int d = phi.domain();
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) out << a << " " << b << " " << c << " -> " << phi(a, b, c) << "\n";
    }
  }
  return out.str();
}

Graph parse_graph(std::istream& in) {
  Graph g;
  bool header = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokens_of(line);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 3 || tok[0] != "graph" || (tok[1] != "directed" && tok[1] != "undirected")) {
        throw ParseError(lineno, "expected 'graph <directed|undirected> <V>'");
      }
      g.directed = tok[1] == "directed";
      g.vertices = parse_bounded(tok[2], lineno, "vertex count", 0, 1 << 20);
      header = true;
      continue;
    }
    if (tok.size() != 3 || tok[0] != "edge") throw ParseError(lineno, "expected 'edge u v'");
    int u = parse_bounded(tok[1], lineno, "vertex", 0, g.vertices - 1);
    int v = parse_bounded(tok[2], lineno, "vertex", 0, g.vertices - 1);
    g.edges.emplace_back(u, v);
  }
  if (!header) throw ParseError(lineno + 1, "missing graph header");
  return g;
}

Graph parse_graph_string(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

Graph load_graph(const std::string& path) {
  auto in = open_file(path);
  return parse_graph(in);
}

std::string write_graph(const Graph& g) {
  std::ostringstream out;
  out << "graph " << (g.directed ? "directed" : "undirected") << " " << g.vertices << "\n";
  for (auto [u, v] : g.edges) out << "edge " << u << " " << v << "\n";
  return out.str();
}

std::string Report::str() const {
  std::ostringstream out;
  out << "verb: " << verb << "\n";
  out << "status: " << status << "\n";
  for (const auto& [k, v] : fields) out << k << ": " << v << "\n";
  return out.str();
}

std::string format_matrix(const GadgetMatrix& m) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.size(); ++j) out << (j ? ", " : "") << m.at(i, j).to_string();
    out << "]";
  }
  out << "]";
  return out.str();
}

std::string format_histogram(const ValueHistogram& h) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [v, c] : h) {
    out << (first ? "" : ", ") << v.to_string() << ": " << c;
    first = false;
  }
  out << "}";
  return out.str();
}

}  // namespace cspw

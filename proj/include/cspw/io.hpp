#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "cspw/maltsev.hpp"
#include "cspw/model.hpp"
#include "cspw/reductions.hpp"

namespace cspw {

/// Instance file (`cspw 1` format). Throws ParseError carrying the offending line.
Instance parse_instance(std::istream& in);
Instance parse_instance_string(const std::string& text);
Instance load_instance(const std::string& path);
std::string write_instance(const Instance& inst);

/// Mal'tsev map file: `a b c -> v` lines. Triples forced by phi(a,b,b) = phi(b,b,a) = a may be omitted.
MaltsevMap parse_phi(std::istream& in, int d);
MaltsevMap parse_phi_string(const std::string& text, int d);
MaltsevMap load_phi(const std::string& path, int d);
/// Every triple, in lexicographic order.
std::string write_phi(const MaltsevMap& phi);

/// `graph directed|undirected V` followed by `edge u v` lines.
Graph parse_graph(std::istream& in);
Graph parse_graph_string(const std::string& text);
Graph load_graph(const std::string& path);
std::string write_graph(const Graph& g);

/// Deterministic `key: value` report.
struct Report {
  std::string verb;
  std::string status = "ok";
  std::vector<std::pair<std::string, std::string>> fields;

  void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
  std::string str() const;
};

std::string format_matrix(const GadgetMatrix& m);
std::string format_histogram(const ValueHistogram& h);

}  // namespace cspw

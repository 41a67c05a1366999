#include <gtest/gtest.h>

#include "cspw/errors.hpp"
#include "cspw/io.hpp"
#include "fixtures.hpp"

using namespace cspw;
using fixtures::q;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    parse_instance_string(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Io, LoadHadamardFile) {
  Instance h = load_instance(std::string(CSPW_DATA) + "/hadamard.cspw");
  EXPECT_EQ(h.domain(), 2);
  EXPECT_EQ(h.order(), 2);
  EXPECT_EQ(h.constraints().size(), 1u);
  EXPECT_EQ(brute_force_Z(h), q(2));
}

TEST(Io, Roundtrip) {
  Instance h = fixtures::hadamard();
  Instance back = parse_instance_string(write_instance(h));
  EXPECT_EQ(write_instance(back), write_instance(h));
  EXPECT_EQ(back.library()[0], h.library()[0]);
}

TEST(Io, ApplyOutOfRangeNamesLine) {
  EXPECT_EQ(error_line(
                "cspw 1\ndomain 2\nroot 1\nfn f 2\n0 0 := 1\nend\nvars 3\napply f 0 5\n"),
            8u);
  try {
    load_instance(std::string(CSPW_DATA) + "/bad_apply.cspw");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 8"), std::string::npos);
  }
}

TEST(Io, Errors) {
  EXPECT_EQ(error_line("cspw 2\n"), 1u);
  EXPECT_EQ(error_line("cspw 1\ndomain 2\ndomain 2\n"), 3u);
  EXPECT_EQ(error_line("cspw 1\ndomain 2\nroot 1\nfn f 1\n0 0 := 1\nend\n"), 5u);
  EXPECT_EQ(error_line("cspw 1\ndomain 2\nroot 1\nfn f 1\n2 := 1\nend\n"), 5u);
  EXPECT_EQ(error_line("cspw 1\ndomain 2\nroot 1\nfn f 1\n0 := 1\n0 := 2\nend\n"), 6u);
  EXPECT_EQ(error_line("cspw 1\ndomain 2\nroot 4\nfn f 1\n0 := 1+\nend\n"), 5u);
  EXPECT_EQ(error_line("cspw 1\ndomain 2\nroot 1\nfn f 2\nend\nvars 2\napply f 0\n"), 7u);
  EXPECT_EQ(error_line("cspw 1\ndomain 2\nroot 1\nvars 2\napply g 0\n"), 5u);
  EXPECT_EQ(error_line("cspw 1\nbogus\n"), 2u);
}

TEST(Io, PhiFile) {
  MaltsevMap x = load_phi(std::string(CSPW_DATA) + "/xor3.phi", 2);
  EXPECT_EQ(x, MaltsevMap::xor3());
  EXPECT_EQ(parse_phi_string(write_phi(MaltsevMap::affine(3)), 3), MaltsevMap::affine(3));
  EXPECT_THROW(parse_phi_string("0 1 0 -> 1\n", 2), ParseError);
  EXPECT_THROW(parse_phi_string("0 1 1 -> 1\n0 1 0 -> 1\n1 0 1 -> 0\n", 2), ParseError);
}

TEST(Io, Graphs) {
  Graph g = parse_graph_string("graph undirected 3\nedge 0 1\nedge 1 2\n");
  EXPECT_FALSE(g.directed);
  EXPECT_EQ(g.vertices, 3);
  EXPECT_EQ(g.edges.size(), 2u);
  EXPECT_EQ(parse_graph_string(write_graph(g)).edges, g.edges);
  EXPECT_THROW(parse_graph_string("graph undirected 2\nedge 0 2\n"), ParseError);
  EXPECT_THROW(parse_graph_string("graph sideways 2\n"), ParseError);
}

TEST(Io, Report) {
  Report r{"solve", "ok", {}};
  r.add("Z", "2");
  EXPECT_EQ(r.str(), "verb: solve\nstatus: ok\nZ: 2\n");
}

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "sfmotif/error.hpp"
#include "sfmotif/motif_graph.hpp"

using namespace sfmotif;

namespace {

MotifGraph spec(const char* s) { return parse_motif(s); }

// Oracle: count permutations preserving adjacency, independent of the library.
std::uint64_t brute_automorphisms(const MotifGraph& g) {
  std::vector<int> p(g.k());
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int u = 0; u < g.k() && ok; ++u)
      for (int v = 0; v < g.k() && ok; ++v) ok = g.adjacent(u, v) == g.adjacent(p[u], p[v]);
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

}  // namespace

TEST(ParseMotif, Triangle) {
  const auto h = spec("k=3; edges=0-1,1-2,2-0");
  EXPECT_EQ(h.k(), 3);
  EXPECT_EQ(h.edge_count(), 3);
  EXPECT_EQ(h.k1(), 0);
}

TEST(ParseMotif, ClawLeavesAreDegreeOne) {
  const auto h = spec("k=4; edges=0-1,0-2,0-3");
  EXPECT_EQ(h.k1(), 3);
  EXPECT_FALSE(h.is_degree_one(0));
  for (int v = 1; v < 4; ++v) EXPECT_TRUE(h.is_degree_one(v));
}

TEST(ParseMotif, WhitespaceInsensitive) {
  EXPECT_EQ(spec(" k = 3 ;edges = 0 - 1 , 1-2 "), spec("k=3; edges=0-1,1-2"));
}

TEST(ParseMotif, Errors) {
  EXPECT_THROW(spec("k=4; edges=0-1,2-3"), DisconnectedError);
  EXPECT_THROW(spec("k=3; edges=0-0,1-2"), ParseError);
  EXPECT_THROW(spec("k=3; edges=0-1,0-1,1-2"), ParseError);
  EXPECT_THROW(spec("k=3; edges=0-3,1-2"), ParseError);
  EXPECT_THROW(spec("k=9; edges=0-1"), ParseError);
  EXPECT_THROW(spec("edges=0-1"), ParseError);
}

TEST(ParseMotif, SpecRoundTrip) {
  const auto h = spec("k=5; edges=0-1,1-2,2-3,3-4,4-0,0-2");
  EXPECT_EQ(parse_motif(h.to_spec()), h);
}

TEST(ParseMotifList, SkipsCommentsAndBlanks) {
  const auto list = parse_motif_list("# header\nk=3; edges=0-1,1-2\n\nk=3; edges=0-1,1-2,0-2\n");
  ASSERT_EQ(list.size(), 2U);
  EXPECT_EQ(list[1].edge_count(), 3);
}

TEST(CanonicalForm, RelabeledPathsAgree) {
  EXPECT_EQ(canonical_form(spec("k=3; edges=0-1,1-2")), canonical_form(spec("k=3; edges=0-2,2-1")));
}

TEST(CanonicalForm, TriangleDiffersFromPath) {
  EXPECT_NE(canonical_form(spec("k=3; edges=0-1,1-2,0-2")), canonical_form(spec("k=3; edges=0-1,1-2")));
}

TEST(CanonicalForm, CycleLabelingsAgree) {
  EXPECT_EQ(canonical_form(spec("k=4; edges=0-1,1-2,2-3,3-0")), canonical_form(spec("k=4; edges=0-2,2-1,1-3,3-0")));
}

TEST(CanonicalForm, InvariantUnderEveryPermutation) {
  const auto h = spec("k=5; edges=0-1,1-2,2-0,2-3,3-4");
  const auto key = canonical_form(h);
  std::array<int, kMaxMotifVertices> p{};
  std::iota(p.begin(), p.begin() + 5, 0);
  do {
    EXPECT_EQ(canonical_form(h.relabeled(p)), key);
  } while (std::next_permutation(p.begin(), p.begin() + 5));
}

TEST(Automorphisms, KnownGroups) {
  EXPECT_EQ(automorphism_count(spec("k=4; edges=0-1,0-2,0-3,1-2,1-3,2-3")), 24U);
  EXPECT_EQ(automorphism_count(spec("k=4; edges=0-1,1-2,2-3,3-0")), 8U);
  EXPECT_EQ(automorphism_count(spec("k=5; edges=0-1,1-2,2-3,3-4,4-0")), 10U);
  EXPECT_EQ(automorphism_count(spec("k=4; edges=0-1,0-2,0-3")), 6U);
}

TEST(Automorphisms, MatchBruteForce) {
  for (const char* s : {"k=5; edges=0-1,1-2,2-0,2-3,3-4", "k=5; edges=0-1,0-2,1-2,2-3,2-4,3-4",
                        "k=6; edges=0-1,1-2,2-3,3-4,4-5,5-0,0-3"}) {
    const auto h = spec(s);
    EXPECT_EQ(automorphism_count(h), brute_automorphisms(h)) << s;
  }
}

TEST(CountCopiesIn, Examples) {
  const auto k4 = spec("k=4; edges=0-1,0-2,0-3,1-2,1-3,2-3");
  const auto c4 = spec("k=4; edges=0-1,1-2,2-3,3-0");
  const auto c4_chord = spec("k=4; edges=0-1,1-2,2-3,3-0,0-2");
  EXPECT_EQ(count_copies_in(spec("k=3; edges=0-1,1-2,0-2"), k4), 4U);
  EXPECT_EQ(count_copies_in(c4, k4), 3U);
  EXPECT_EQ(count_copies_in(c4, c4_chord), 1U);
  EXPECT_EQ(count_embeddings(c4, k4), 3U * 8U);
}

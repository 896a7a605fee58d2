#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include "qsu2/cache.hpp"
#include "qsu2/catalog.hpp"

using namespace qsu2;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("qsu2-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(Hash, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ull);
}

TEST(Hash, KeyIgnoresLabels) {
  PDCode a = parse_pd(R"({"pd": [[1, 2, 2, 1]], "components": [[1, 2]]})");
  PDCode b = parse_pd(R"({"pd": [[7, 9, 9, 7]], "components": [[7, 9]]})");
  EXPECT_EQ(bracket_key(a), bracket_key(b));
  EXPECT_NE(bracket_key(a), bracket_key(parse_pd(R"({"pd": [[1, 1, 2, 2]], "components": [[1, 2]]})")));
}

TEST(DiskCache, RoundTripAndValidation) {
  auto dir = fresh_dir("rt");
  DiskCache c(dir);
  LaurentPoly v(-4, {-1, 0, 0, 0, 0, 0, 0, 0, -1});
  EXPECT_FALSE(c.load("X[1,2,2,1]C(1,2)").has_value());
  c.store("X[1,2,2,1]C(1,2)", v);
  auto got = c.load("X[1,2,2,1]C(1,2)");
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ(*got, v);
  // A record whose stored key differs (a hash collision) reads as a miss.
  {
    std::ofstream out(c.path_for("other"));
    out << "qsu2-bracket 1\nsomething else\n0 1 1\n";
  }
  EXPECT_FALSE(c.load("other").has_value());
  // A damaged body reads as a miss.
  {
    std::ofstream out(c.path_for("broken"));
    out << "qsu2-bracket 1\nbroken\n0 5 1\n";
  }
  EXPECT_FALSE(c.load("broken").has_value());
  std::size_t tmp = 0;
  for (const auto& e : fs::directory_iterator(dir)) tmp += e.path().string().find(".tmp.") != std::string::npos;
  EXPECT_EQ(tmp, 0u);
  fs::remove_all(dir);
}

TEST(DiskCache, ConcurrentWritersLeaveOneCompleteRecord) {
  auto dir = fresh_dir("conc");
  DiskCache c(dir);
  LaurentPoly v = LaurentPoly::delta().pow(5);
  std::vector<std::thread> ts;
  for (int i = 0; i < 8; ++i)
    ts.emplace_back([&] {
      for (int k = 0; k < 20; ++k) c.store("key", v);
    });
  for (auto& t : ts) t.join();
  auto got = c.load("key");
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ(*got, v);
  fs::remove_all(dir);
}

TEST(Evaluator, MemoryAndDiskHits) {
  auto dir = fresh_dir("ev");
  PDCode t2 = cable(zero_frame_normalize(catalog_entry("trefoil").diagram), {2});
  EvaluatorOptions o;
  o.cache_dir = dir;
  o.threads = 2;
  LaurentPoly first;
  {
    BracketEvaluator ev(o);
    first = ev.mult(t2);
    EXPECT_EQ(ev.mult(t2), first);
    auto s = ev.stats();
    EXPECT_EQ(s.computed, 1u);
    EXPECT_EQ(s.memory_hits, 1u);
  }
  BracketEvaluator again(o);
  EXPECT_EQ(again.mult(t2), first);
  EXPECT_EQ(again.stats().disk_hits, 1u);
  EXPECT_EQ(first, bracket_mult(t2));
  fs::remove_all(dir);
}

TEST(Evaluator, PrefetchMatchesSerialAndReportsLimits) {
  std::vector<PDCode> ds;
  for (const auto& e : catalog()) {
    PDCode z = zero_frame_normalize(e.diagram);
    std::vector<int> d(z.num_components(), 2);
    ds.push_back(cable(z, d));
  }
  EvaluatorOptions o;
  o.threads = 4;
  BracketEvaluator ev(o);
  ev.prefetch(ds);
  EXPECT_EQ(ev.stats().computed, ds.size());
  for (const auto& d : ds) EXPECT_EQ(ev.mult(d), bracket_mult(d));

  EvaluatorOptions tight;
  tight.width_limit = 4;
  BracketEvaluator small(tight);
  EXPECT_THROW(small.prefetch(ds), ResourceLimit);
}

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

const fs::path& cache_dir() {
  static const fs::path d = fs::temp_directory_path() / ("qsu2-cli-" + std::to_string(::getpid()));
  return d;
}

// stderr is discarded; progress lines never reach the data stream.
Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + QSU2_CLI + " " + args + " 2>/dev/null";
  FILE* f = ::popen(cmd.c_str(), "r");
  Run r{-1, ""};
  if (!f) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  int st = ::pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string cached(const std::string& args) { return args + " --cache-dir " + cache_dir().string(); }

}  // namespace

TEST(Cli, RingInfo) {
  auto r = run("ring-info --p 5 --format machine");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["degree"], 16);
  EXPECT_EQ(j["u"], 1);
  EXPECT_EQ(j["epsilon"], 1);
  EXPECT_EQ(run("ring-info --p 3 --format machine").out.find("\"gauss_valuation\": 1") != std::string::npos, true);
  EXPECT_EQ(run("ring-info --p 4").code, 2);
}

TEST(Cli, InvariantCatalogCases) {
  auto u = run(cached("invariant --catalog unknot --framings 2 --p 3 --format machine"));
  ASSERT_EQ(u.code, 0);
  auto j = nlohmann::json::parse(u.out);
  ASSERT_EQ(j["reports"].size(), 2u);
  for (const auto& r : j["reports"]) EXPECT_TRUE(r["verdict"].get<bool>());

  auto b = run(cached("invariant --catalog borromean --p 3 --format machine"));
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(nlohmann::json::parse(b.out)["reports"].size(), 8u);

  for (const char* p : {"3", "5", "7"}) EXPECT_EQ(run(cached(std::string("invariant --catalog hopf --p ") + p)).code, 2);
}

TEST(Cli, InvariantFromDocument) {
  std::string doc = R"('{"pd": [], "free_loops": 1, "framings": [-1], "p": 5}')";
  auto r = run(cached("invariant --input " + doc + " --route both --format machine"));
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["p"], 5);
  EXPECT_EQ(j["reports"][0]["tau"], "1 * xi^0");
  EXPECT_TRUE(j["reports"][0]["routes_agree"].get<bool>());
  EXPECT_EQ(run(cached("invariant --input '{\"pd\": [], \"free_loops\": 1, \"framings\": [5]}' --p 5")).code, 2);
  EXPECT_EQ(run(cached("invariant --input '{\"pd\": [], \"free_loops\": 1, \"framings\": [1]}'")).code, 2);
  EXPECT_EQ(run(cached("invariant --catalog trefoil --p 3 --theta 1 --framings 3")).code, 2);
}

TEST(Cli, MachineOutputIsDeterministic) {
  std::string args = "invariant --catalog whitehead --p 3 --route both --format machine";
  auto a = run(cached(args + " --threads 1"));
  auto b = run(args + " --threads 8 --no-cache");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, run(cached(args)).out);
}

TEST(Cli, WidthLimitIsExitThree) {
  EXPECT_EQ(run("invariant --catalog trefoil --p 5 --width-limit 6 --no-cache").code, 3);
}

TEST(Cli, CacheDirectoryPrecedence) {
  fs::path env_dir = cache_dir() / "env", flag_dir = cache_dir() / "flag";
  run("bracket --catalog trefoil", "QSU2_CACHE_DIR=" + env_dir.string());
  EXPECT_TRUE(fs::exists(env_dir));
  run("bracket --catalog figure8 --cache-dir " + flag_dir.string(), "QSU2_CACHE_DIR=" + env_dir.string());
  EXPECT_TRUE(fs::exists(flag_dir));
  std::size_t in_env = 0;
  for (auto& e : fs::directory_iterator(env_dir)) in_env += e.is_regular_file();
  EXPECT_EQ(in_env, 1u);
}

TEST(Cli, Bracket) {
  auto u = run(cached("bracket --input '{\"pd\": [], \"free_loops\": 1}'"));
  EXPECT_EQ(u.code, 0);
  EXPECT_EQ(u.out, "1\n");
  EXPECT_EQ(run(cached("bracket --catalog hopf")).out, "-A^4 - A^-4\n");
  EXPECT_EQ(run(cached("bracket --input '{\"pd\": [[1, 2, 3]]}'")).code, 2);
  EXPECT_EQ(run(cached("bracket --input /nonexistent/file.json")).code, 2);
}

TEST(Cli, Catalog) {
  auto r = run("catalog --format machine");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  std::map<std::string, bool> split;
  for (const auto& e : j) split[e["name"]] = e["algebraically_split"];
  std::map<std::string, bool> expect = {{"unknot", true},    {"hopf", false},     {"trefoil", true},
                                        {"figure8", true},   {"whitehead", true}, {"borromean", true}};
  EXPECT_EQ(split, expect);
}

TEST(Cli, Verify) {
  EXPECT_EQ(run(cached("verify --p 3")).code, 0);
  EXPECT_EQ(run(cached("verify --p 3 --bound-slack 1")).code, 1);
  EXPECT_EQ(run("verify --p 9").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, Cleanup) { fs::remove_all(cache_dir()); }

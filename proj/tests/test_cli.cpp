#include "cli.hpp"

#include "socrescale/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace socrescale;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("soc-rescale-cli-" + std::string(::testing::UnitTest::GetInstance()
                                                 ->current_test_info()
                                                 ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) const {
    const std::string p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

constexpr const char* kPrimalInstance = R"({
  "version": "soc-rescale/1",
  "m": 1,
  "blocks": [{"type": "soc", "dim": 3}],
  "A": [0, 0, 1]
})";

constexpr const char* kDualInstance = R"({
  "version": "soc-rescale/1",
  "m": 1,
  "blocks": [{"type": "soc", "dim": 3}],
  "A": [1, 0, 0]
})";

constexpr const char* kToySocp = R"({
  "version": "soc-rescale/1",
  "m": 1,
  "blocks": [{"type": "halfline"}],
  "A": [1],
  "b": [1],
  "c": [1]
})";

}  // namespace

TEST_F(CliTest, SolveFeasHandInstances) {
  const Outcome p = invoke({"solve-feas", file("p.json", kPrimalInstance), "-q"});
  EXPECT_EQ(p.code, 0);
  const Certificate pc = parse_certificate(p.out);
  EXPECT_EQ(pc.status, SolveStatus::PrimalInterior);

  const Outcome d = invoke({"solve-feas", file("d.json", kDualInstance), "-q"});
  EXPECT_EQ(d.code, 1);
  EXPECT_EQ(parse_certificate(d.out).status, SolveStatus::DualNonzero);
}

TEST_F(CliTest, MalformedInputIsUsageError) {
  const Outcome r = invoke({"solve-feas", file("bad.json", "{\"version\": ")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("bad.json"), std::string::npos);
  EXPECT_EQ(invoke({"solve-feas", path("missing.json")}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"solve-feas", file("p.json", kPrimalInstance), "--epsilon", "-1"}).code,
            cli::kExitUsage);
}

TEST_F(CliTest, HelpExitsCleanly) {
  const Outcome r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("solve-feas"), std::string::npos);
}

TEST_F(CliTest, SolveSocpToy) {
  const std::string inst = file("toy.json", kToySocp);
  const Outcome r = invoke({"solve-socp", inst, "--delta", "1e-6", "-q"});
  ASSERT_EQ(r.code, 0) << r.err;
  const PhaseResult pr = parse_phase_result(r.out);
  EXPECT_LE(pr.gap, 1e-6);
  EXPECT_NEAR(pr.x(0), 1.0, 1e-9);

  const Outcome p1 = invoke({"solve-socp", inst, "--delta", "inf", "-q"});
  ASSERT_EQ(p1.code, 0) << p1.err;
  EXPECT_EQ(parse_phase_result(p1.out).phase, 1);

  EXPECT_EQ(invoke({"solve-socp", file("p.json", kPrimalInstance)}).code, cli::kExitUsage);
}

TEST_F(CliTest, GenerateSolveVerify) {
  for (const char* kind : {"primal", "dual"}) {
    const std::string inst = path(std::string(kind) + ".json");
    ASSERT_EQ(invoke({"generate", kind, "--seed", "7", "--m", "3", "--blocks",
                   "soc:4,halfline,soc:3", "-o", inst})
                  .code,
              0);
    const std::string cert = path(std::string(kind) + ".cert.json");
    const Outcome s = invoke({"solve-feas", inst, "-o", cert, "-q"});
    EXPECT_EQ(s.code, std::string(kind) == "primal" ? 0 : 1);
    const Outcome v = invoke({"verify", inst, cert});
    EXPECT_EQ(v.code, 0) << v.out;
    EXPECT_NE(v.out.find("PASS"), std::string::npos);
  }
}

TEST_F(CliTest, TamperedCertificateFails) {
  const std::string inst = file("p.json", kPrimalInstance);
  const std::string cert = file("c.json", R"({
  "version": "soc-rescale/1",
  "status": "primal_interior",
  "epsilon": 0,
  "x": [1, 0, 0.001],
  "stats": {"bp_calls": 1, "bp_iterations": 0, "max_bp_iterations": 0, "outer_iterations": 0,
            "min_progress": "inf", "cuts_per_block": [0], "ledger": [1.0]}
})");
  const Outcome strict = invoke({"verify", inst, cert});
  EXPECT_EQ(strict.code, cli::kExitVerifyFailed);
  EXPECT_NE(strict.out.find("FAIL"), std::string::npos);
  EXPECT_EQ(invoke({"verify", inst, cert, "--tol", "1e-2"}).code, 0);
}

TEST_F(CliTest, CertificatesAreDeterministic) {
  const std::string inst = path("i.json");
  ASSERT_EQ(invoke({"generate", "dual", "--seed", "3", "--m", "2", "--blocks", "soc:5,soc:2", "-o",
                 inst})
                .code,
            0);
  const Outcome a = invoke({"solve-feas", inst, "-q"});
  const Outcome b = invoke({"solve-feas", inst, "-q"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST_F(CliTest, BatchDirectory) {
  const fs::path batch = dir_ / "batch";
  fs::create_directories(batch);
  for (int i = 0; i < 4; ++i) {
    const std::string kind = i % 2 ? "dual" : "primal";
    ASSERT_EQ(invoke({"generate", kind, "--seed", std::to_string(i), "--m", "2", "--blocks",
                   "soc:3,halfline", "-o", (batch / ("inst" + std::to_string(i) + ".json")).string()})
                  .code,
              0);
  }
  std::ofstream(batch / "broken.json") << "[";
  const Outcome r = invoke({"solve-feas", batch.string(), "--jobs", "2", "-q"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  for (int i = 0; i < 4; ++i) {
    const fs::path cert = batch / ("inst" + std::to_string(i) + ".cert.json");
    ASSERT_TRUE(fs::exists(cert));
    const Outcome v = invoke({"verify", (batch / ("inst" + std::to_string(i) + ".json")).string(),
                       cert.string()});
    EXPECT_EQ(v.code, 0);
  }
  EXPECT_NE(r.out.find("broken.json"), std::string::npos);
}

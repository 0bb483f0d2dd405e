#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path scratch = fs::path(EXFLAT_SCRATCH_DIR);

fs::path write_config(const std::string& name, const std::string& text) {
  fs::create_directories(scratch);
  const fs::path p = scratch / (name + ".json");
  std::ofstream(p) << text;
  return p;
}

struct Outcome {
  int code;
  std::string stderr_text;
};

Outcome run(const std::string& command, const fs::path& config, const fs::path& out, const std::string& extra = "") {
  const fs::path err = out.string() + ".stderr";
  fs::remove_all(out);
  const std::string cmd = std::string(EXFLAT_BINARY) + " " + command + " --config " + config.string() + " --out " +
                          out.string() + " " + extra + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  std::ifstream in(err);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::vector<std::string>& header) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  header.clear();
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) header.push_back(cell);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::vector<double> row;
    for (std::string cell; std::getline(ss, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

const char* trefoil = R"({"spectrum":{"anchors_deg":[0,120,240],"weights":[1,1,1]},
  "grid":{"radial":8,"angular":16},"boundary":{"samples_per_arc":200,"eps_end":0.001},
  "outputs":{"formats":["csv","json","svg"]},"seed":3})";

}  // namespace

TEST(Cli, VerifySymmetricThreePasses) {
  const Outcome o = run("verify", write_config("trefoil", trefoil), scratch / "verify3");
  EXPECT_EQ(o.code, 0) << o.stderr_text;
  const json report = json::parse(slurp(scratch / "verify3" / "report.json"));
  EXPECT_TRUE(report.at("pass").get<bool>());
  for (const json& r : report.at("records")) EXPECT_TRUE(r.at("pass").get<bool>()) << r.dump();
  EXPECT_TRUE(fs::exists(scratch / "verify3" / "report.csv"));
}

TEST(Cli, RootInBoundaryBandExitsThree) {
  const fs::path cfg = write_config(
      "boundary_root", R"({"spectrum":{"anchors_deg":[0,180],"weights":[1,2]},"tolerances":{"eps_bdry":0.9}})");
  const Outcome o = run("verify", cfg, scratch / "root");
  EXPECT_EQ(o.code, 3);
  EXPECT_NE(o.stderr_text.find("RootNearBoundary"), std::string::npos);
}

TEST(Cli, InvalidInputExitsTwo) {
  const fs::path dup = write_config("dup", R"({"spectrum":{"anchors_deg":[0,0],"weights":[1,1]}})");
  const Outcome o = run("generate", dup, scratch / "dup");
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.stderr_text.find("SchemaError"), std::string::npos);
  EXPECT_EQ(run("verify", scratch / "missing.json", scratch / "missing").code, 2);
  EXPECT_EQ(run("compare", write_config("trefoil", trefoil), scratch / "cmp3").code, 2);
  EXPECT_EQ(run("nonsense", dup, scratch / "nonsense").code, 2);
}

TEST(Cli, VerificationFailureExitsOne) {
  // A vanishing floor above every |Phi| on the grid makes one record fail.
  const fs::path cfg = write_config("strict", R"({"spectrum":{"anchors_deg":[0,180],"weights":[0.5,0.5]},
    "tolerances":{"nonvanishing_floor":1e6}})");
  const Outcome o = run("verify", cfg, scratch / "strict");
  EXPECT_EQ(o.code, 1);
  const json report = json::parse(slurp(scratch / "strict" / "report.json"));
  EXPECT_FALSE(report.at("pass").get<bool>());
}

TEST(Cli, CompareCatenoidResidual) {
  const fs::path cfg = write_config("catenoid", R"({"spectrum":{"anchors_deg":[0,180],"weights":[0.5,0.5]}})");
  ASSERT_EQ(run("compare", cfg, scratch / "compare").code, 0);
  const json doc = json::parse(slurp(scratch / "compare" / "compare.json"));
  EXPECT_LT(doc.at("residual").get<double>(), 1e-4);
}

TEST(Cli, EndsReportsOnePerAnchor) {
  const fs::path cfg = write_config("catenoid", R"({"spectrum":{"anchors_deg":[0,180],"weights":[0.5,0.5]}})");
  ASSERT_EQ(run("ends", cfg, scratch / "ends").code, 0);
  const json doc = json::parse(slurp(scratch / "ends" / "ends.json"));
  ASSERT_EQ(doc.at("ends").size(), 2u);
  for (const json& e : doc.at("ends")) EXPECT_NEAR(e.at("theta").get<double>(), M_PI, 1e-3);
}

TEST(Cli, CatalogueEmitsClosedForms) {
  const fs::path cfg = write_config("halfplane", R"({"spectrum":{"anchors_deg":[0],"weights":[1]},
    "boundary":{"samples_per_arc":50},"outputs":{"formats":["csv","json","svg"]}})");
  ASSERT_EQ(run("catalogue", cfg, scratch / "catalogue").code, 0);
  const json doc = json::parse(slurp(scratch / "catalogue" / "catalogue.json"));
  const double c = doc.at("pathological").at("period_constant").at(1).get<double>();
  EXPECT_NEAR(c, 2.0 * M_PI * std::cyl_bessel_j(0.0, 1.0), 1e-8);
  EXPECT_EQ(doc.at("trivial_roofs").size(), 3u);
  EXPECT_TRUE(fs::exists(scratch / "catalogue" / "hairpin_upper.csv"));
  EXPECT_TRUE(fs::exists(scratch / "catalogue" / "hairpin.svg"));
}

TEST(Cli, GenerateArtifactsAreReproducibleAndConsistent) {
  const fs::path cfg = write_config("trefoil", trefoil);
  ASSERT_EQ(run("generate", cfg, scratch / "gen_a").code, 0);
  ASSERT_EQ(run("generate", cfg, scratch / "gen_b").code, 0);
  for (const char* name : {"boundary_arc0.csv", "boundary_arc1.csv", "boundary_arc2.csv", "grid.csv", "generate.json",
                           "boundary.svg"})
    EXPECT_EQ(slurp(scratch / "gen_a" / name), slurp(scratch / "gen_b" / name)) << name;

  std::vector<std::string> header;
  std::size_t total = 0;
  std::vector<std::vector<std::vector<double>>> arcs;
  for (int j = 0; j < 3; ++j) {
    const auto rows = read_csv(scratch / "gen_a" / ("boundary_arc" + std::to_string(j) + ".csv"), header);
    EXPECT_EQ(header, (std::vector<std::string>{"theta", "re_F", "im_F", "u"}));
    for (const auto& r : rows) EXPECT_LE(std::abs(r.at(3)), 1e-10);
    total += rows.size();
    arcs.push_back(rows);
  }
  EXPECT_EQ(total, 600u);
  read_csv(scratch / "gen_a" / "grid.csv", header);
  EXPECT_EQ(header, (std::vector<std::string>{"r", "phi", "re_z", "im_z", "re_F", "im_F", "u"}));

  // Each SVG path carries exactly the CSV coordinates (imaginary axis flipped).
  const std::string svg = slurp(scratch / "gen_a" / "boundary.svg");
  std::size_t pos = 0;
  for (int j = 0; j < 3; ++j) {
    pos = svg.find(" d=\"M ", pos);
    ASSERT_NE(pos, std::string::npos);
    const std::size_t end = svg.find('"', pos + 4);
    std::stringstream ss(svg.substr(pos + 4, end - pos - 4));
    std::string tok;
    std::size_t k = 0;
    while (ss >> tok) {
      if (tok == "M" || tok == "L") continue;
      const double x = std::stod(tok);
      ss >> tok;
      const double y = std::stod(tok);
      EXPECT_EQ(x, arcs[j].at(k)[1]);
      EXPECT_EQ(-y, arcs[j].at(k)[2]);
      ++k;
    }
    EXPECT_EQ(k, arcs[j].size());
    pos = end;
  }
  EXPECT_EQ(svg.find(" d=\"M ", pos), std::string::npos);
}

TEST(Cli, SeedOverrideChangesOnlySeededRecords) {
  const fs::path cfg = write_config("trefoil", trefoil);
  ASSERT_EQ(run("verify", cfg, scratch / "seed_a", "--seed 1").code, 0);
  ASSERT_EQ(run("verify", cfg, scratch / "seed_b", "--seed 1").code, 0);
  EXPECT_EQ(slurp(scratch / "seed_a" / "report.json"), slurp(scratch / "seed_b" / "report.json"));
  const json doc = json::parse(slurp(scratch / "seed_a" / "report.json"));
  EXPECT_EQ(doc.at("seed").get<int>(), 1);
}

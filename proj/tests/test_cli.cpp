#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = rosc::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("verify runs the full suite") {
  const auto result = run_cli({"verify", "--ratios", "2,1", "--strengths", "1.0,0.5", "--omega",
                               "1.0", "--all", "--samples", "25"});
  CHECK(result.exit_code == 0);
  const auto report = nlohmann::json::parse(result.out);
  CHECK(report["params"]["ratios"] == nlohmann::json({2, 1}));
  CHECK(report["seed"] == 0);
  CHECK(report["checks"].size() > 20);
  for (const auto& check : report["checks"]) {
    INFO(check["name"].get<std::string>());
    CHECK(check["status"] == "pass");
  }
}

TEST_CASE("verify output is byte-identical across runs") {
  const std::vector<std::string> args = {"verify", "--ratios", "1,1", "--strengths",
                                         "0.3,0.8", "--samples", "10"};
  const auto first = run_cli(args);
  const auto second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("verify case selection") {
  const auto iso = run_cli({"verify", "--ratios", "1,1", "--case", "iso_1_1"});
  CHECK(iso.exit_code == 0);
  const auto report = nlohmann::json::parse(iso.out);
  bool has_case_check = false;
  for (const auto& check : report["checks"]) {
    const auto name = check["name"].get<std::string>();
    CHECK(name.substr(0, 8) != "numeric:");  // --case selects the symbolic group
    if (name.find("case:iso_1_1") == 0) has_case_check = true;
  }
  CHECK(has_case_check);

  CHECK(run_cli({"verify", "--ratios", "2,1", "--case", "iso_1_1"}).exit_code == 2);
  CHECK(run_cli({"verify", "--ratios", "2,1", "--case", "nope"}).exit_code == 2);
}

TEST_CASE("verify rejects negative strengths for numeric checks") {
  const auto result = run_cli({"verify", "--ratios", "2,1", "--strengths", "-1,0", "--numeric"});
  CHECK(result.exit_code == 2);
  // the algebra accepts negative strengths
  CHECK(run_cli({"verify", "--ratios", "2,1", "--strengths", "-1,0", "--symbolic"}).exit_code == 0);
}

TEST_CASE("configuration errors") {
  CHECK(run_cli({}).exit_code == 2);
  CHECK(run_cli({"frobnicate"}).exit_code == 2);
  CHECK(run_cli({"verify"}).exit_code == 2);                              // missing --ratios
  CHECK(run_cli({"verify", "--ratios", "2,1", "--bogus"}).exit_code == 2);
  CHECK(run_cli({"verify", "--ratios", "0,1"}).exit_code == 2);
  CHECK(run_cli({"--help"}).exit_code == 0);
}

TEST_CASE("expand prints the printed-case expansion") {
  const auto result = run_cli({"expand", "--ratios", "1,1"});
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("lambda = -2") != std::string::npos);
  CHECK(result.out.find("I3 = x1*p2 - x2*p1") != std::string::npos);
  CHECK(result.out.find("x1^-2*x2^2*k1") != std::string::npos);  // k1 (x2/x1)^2 term
  CHECK(result.out == run_cli({"expand", "--ratios", "1,1"}).out);

  const auto checked = run_cli({"expand", "--ratios", "2,1", "--check-paper"});
  CHECK(checked.exit_code == 0);
  CHECK(checked.out.find("lambda = -8") != std::string::npos);
  CHECK(checked.out.find(": pass") != std::string::npos);

  const auto general = run_cli({"expand", "--ratios", "5,3", "--check-paper"});
  CHECK(general.exit_code == 0);
  CHECK(general.out.find("lambda = -2") != std::string::npos);
  CHECK(general.out.find("skipping the printed-case check") != std::string::npos);
}

TEST_CASE("expand error paths") {
  CHECK(run_cli({"expand", "--ratios", "21,1"}).exit_code == 1);   // degree limit
  CHECK(run_cli({"expand", "--ratios", "1,2,3"}).exit_code == 2);  // not a pair
  CHECK(run_cli({"expand", "--ratios", "0,1"}).exit_code == 2);
}

TEST_CASE("trajectory subcommand") {
  const auto csv_path = std::filesystem::temp_directory_path() / "rosc_cli_test_traj.csv";
  const auto result =
      run_cli({"trajectory", "--ratios", "2,1", "--strengths", "0.5,1.3", "--x", "1,1", "--p",
               "0,0.5", "--t-end", "6.2832", "--stride", "0.19635", "--out", csv_path.string()});
  CHECK(result.exit_code == 0);

  std::ifstream csv(csv_path);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "t,x1,x2,p1,p2,E1,E2,reM12,imM12");

  // final stdout line is a one-line JSON drift summary
  const auto last_newline = result.out.find_last_of('\n');
  const auto prev_newline = result.out.find_last_of('\n', last_newline - 1);
  const std::string summary_line =
      result.out.substr(prev_newline + 1, last_newline - prev_newline - 1);
  const auto summary = nlohmann::json::parse(summary_line);
  CHECK(summary["worst"].get<double>() < 1e-8);
  CHECK(summary["max_rel_dev"].contains("imM12"));
  std::filesystem::remove(csv_path);
}

TEST_CASE("trajectory error paths") {
  CHECK(run_cli({"trajectory", "--ratios", "2,1", "--x", "1,1", "--p", "0,0.5", "--t-end", "0"})
            .exit_code == 2);
  CHECK(run_cli({"trajectory", "--ratios", "2,1", "--p", "0,0.5", "--t-end", "1"}).exit_code == 2);
  CHECK(run_cli({"trajectory", "--ratios", "2,1", "--strengths", "1,1", "--x", "0,1", "--p",
                 "0,0.5", "--t-end", "1"})
            .exit_code == 2);  // singular initial state
  CHECK(run_cli({"trajectory", "--ratios", "2,1", "--strengths", "-0.5,0", "--x", "1,1", "--p",
                 "0,0.5", "--t-end", "1"})
            .exit_code == 2);
}

TEST_CASE("independence subcommand") {
  const auto result = run_cli(
      {"independence", "--ratios", "2,1", "--strengths", "1,1", "--samples", "10", "--seed", "3"});
  CHECK(result.exit_code == 0);
  const auto report = nlohmann::json::parse(result.out);
  CHECK(report["expected_rank"] == 3);
  CHECK(report["base"]["min_rank"] == 3);
  CHECK(report["augmented"]["max_rank"] == 3);
  CHECK(report["base"]["points"].size() == 10);
  CHECK(report["base"]["points"][0]["singular_values"].size() == 3);

  const auto fradkin = run_cli({"independence", "--ratios", "1,1,1", "--strengths", "0,0,0",
                                "--samples", "10", "--fradkin"});
  CHECK(fradkin.exit_code == 0);
  CHECK(nlohmann::json::parse(fradkin.out)["base"]["min_rank"] == 5);

  CHECK(run_cli({"independence", "--ratios", "2,1", "--samples", "0"}).exit_code == 2);
  CHECK(run_cli({"independence", "--ratios", "2,1", "--fradkin"}).exit_code == 2);
}

#include <cstdlib>
#include <sstream>

#include "cyclalg/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using cyclalg::run_command;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int c = run_command(args, o, e);
  return {c, o.str(), e.str()};
}

}  // namespace

TEST_CASE("brauer subcommands") {
  auto r = run({"brauer", "inv", "--d", "3", "--r", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "1/3\n");
  CHECK(run({"brauer", "inv", "--d", "4", "--r", "6"}).out == "1/2\n");
  CHECK(run({"brauer", "wedderburn", "--d", "6", "--r", "4"}).out == "M_2(A(3,2))\n");
  CHECK(run({"brauer", "basechange", "--d", "4", "--r", "1", "--m", "2"}).out == "A(4,2) = M_2(A(2,1)), inv 1/2\n");
  CHECK(run({"brauer", "basechange", "--d", "4", "--r", "1", "--m", "2", "--n", "1"}).out == "SL_2(A(2,1))\n");
  r = run({"brauer", "basechange", "--d", "4", "--r", "2", "--m", "2", "--n", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("NotDivisionInput") != std::string::npos);
}

TEST_CASE("split-check and descent-form verdicts") {
  auto r = run({"split-check", "--charp", "--n", "1", "--d", "3", "--p", "2", "--i", "2"});
  CHECK(r.code == 1);
  CHECK(r.out == "NON-SPLIT (witness: subfield index 3 with gcd 3)\n");
  CHECK(run({"split-check", "--charp", "--n", "3", "--d", "3", "--p", "2", "--i", "2"}).out == "SPLIT\n");
  CHECK(run({"split-check", "--charp", "--n", "1", "--d", "3", "--p", "2", "--i", "1"}).code == 0);
  r = run({"split-check", "--subfield", "--n", "1", "--d", "2", "--m", "4"});
  CHECK(r.code == 1);
  CHECK(r.out == "NON-SPLIT (witness: gcd(nd, m) = 2 does not divide n = 1)\n");
  CHECK(run({"split-check", "--n", "1", "--d", "2", "--m", "4"}).code == 2);
  CHECK(run({"split-check", "--charp", "--subfield", "--n", "1", "--d", "2", "--m", "4"}).code == 2);

  CHECK(run({"descent-form", "--n", "1", "--d", "3", "--r", "1", "--m", "2"}).out == "SL_1(A(3,2))\n");
  CHECK(run({"descent-form", "--n", "1", "--d", "2", "--r", "1", "--m", "2"}).code == 1);
}

TEST_CASE("section synth") {
  auto r = run({"section", "synth", "--p", "2", "--i", "1", "--d", "3", "--r", "1", "--n", "1", "--samples", "20"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ALL PASS (22/22)") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);

  r = run({"section", "synth", "--p", "2", "--i", "2", "--d", "3", "--r", "1", "--n", "1"});
  CHECK(r.code == 1);
  CHECK(r.out == "REFUSED: NON-SPLIT (witness: subfield index 3 with gcd 3)\n");
  r = run({"section", "synth", "--p", "2", "--i", "1", "--d", "2", "--r", "1", "--n", "1"});
  CHECK(r.code == 1);
  CHECK(r.out == "REFUSED: NON-SPLIT (witness: subfield index 2 with gcd 2)\n");

  // the ambient-generator basis breaks a conjugation relation here
  r = run({"section", "synth", "--p", "2", "--i", "2", "--d", "3", "--r", "1", "--n", "3", "--samples", "4", "--basis",
           "ambient"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL  rel_Caprime_Cb") != std::string::npos);

  CHECK(run({"section", "synth", "--p", "4", "--i", "1", "--d", "3", "--r", "1", "--n", "1"}).code == 2);
  CHECK(run({"section", "synth", "--p", "2", "--i", "1", "--d", "3", "--r", "3", "--n", "1"}).code == 2);
}

TEST_CASE("hanke, extension split, ses-verdict") {
  auto r = run({"hanke", "--p", "2", "--i", "1", "--a", "T", "--alpha", "e=0; T -> T"});
  CHECK(r.code == 0);
  CHECK(r.out.find("IN AUT(G) (branch 1, lambda = T^0 * (1)") == 0);
  r = run({"hanke", "--p", "3", "--i", "1", "--a", "T", "--alpha", "e=0; T -> 2*T + T^3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("witness verified") != std::string::npos);
  CHECK(run({"hanke", "--p", "2", "--i", "1", "--a", "T", "--alpha", "e=0; T -> T^2"}).code == 2);

  const std::string data = CYCLALG_TEST_DATA;
  CHECK(run({"extension", "split", "--group", data + "/c4_c2.json"}).code == 1);
  CHECK(run({"extension", "split", "--group", data + "/q8_center.json"}).code == 1);
  r = run({"extension", "split", "--group", data + "/c6_c3.json"});
  CHECK(r.code == 0);
  CHECK(r.out == "SPLIT (complement: [0,3])\n");
  CHECK(run({"extension", "split", "--group", data + "/missing.json"}).code == 2);
  CHECK(run({"extension", "split", "--group", data + "/c6_c3.json", "--bound", "4"}).code == 2);

  CHECK(run({"ses-verdict", "--type", "A", "--rank", "2", "--g", "2", "--tower", data + "/c4_c2.json"}).code == 1);
  CHECK(run({"ses-verdict", "--type", "E", "--rank", "6", "--g", "2", "--tower", data + "/v4_c2.json"}).code == 0);
  CHECK(run({"ses-verdict", "--type", "D", "--rank", "4", "--g", "3", "--tower", data + "/s3_a3.json"}).code == 0);
  CHECK(run({"ses-verdict", "--type", "D", "--rank", "4", "--g", "6"}).out == "SPLIT (Aut R = S3, g = 6)\n");
  CHECK(run({"ses-verdict", "--type", "A", "--rank", "2", "--g", "2"}).code == 2);
  CHECK(run({"ses-verdict", "--type", "B", "--rank", "3", "--g", "2"}).code == 2);
  CHECK(run({"ses-verdict", "--type", "X", "--rank", "3", "--g", "1"}).code == 2);
}

TEST_CASE("nrd") {
  auto r = run({"nrd", "--p", "3", "--i", "1", "--d", "2", "--r", "1", "--elem", "0", "--elem", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "T^1 * (2) mod T^33\n");  // -T
  r = run({"--json", "nrd", "--p", "2", "--i", "1", "--d", "3", "--r", "1", "--elem", "1 + T", "--elem", "[0,1]"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["result"]["in_K"] == true);
  CHECK(run({"nrd", "--p", "2", "--i", "1", "--d", "2", "--r", "1", "--elem", "0", "--elem", "0", "--elem", "1"}).code ==
        2);
}

TEST_CASE("precision, determinism and usage errors") {
  const std::vector<std::string> args{"--seed", "7", "section", "synth", "--p", "3", "--i", "1", "--d", "2",
                                      "--r", "1", "--n", "2", "--samples", "3"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("seed=7") != std::string::npos);

  setenv(cyclalg::kPrecisionEnv, "12", 1);
  CHECK(run(args).out.find("prec=12") != std::string::npos);
  std::vector<std::string> with_flag{"--prec", "16"};
  with_flag.insert(with_flag.end(), args.begin(), args.end());
  CHECK(run(with_flag).out.find("prec=16") != std::string::npos);
  setenv(cyclalg::kPrecisionEnv, "3", 1);
  CHECK(run({"brauer", "inv", "--d", "3", "--r", "1"}).code == 2);
  setenv(cyclalg::kPrecisionEnv, "abc", 1);
  CHECK(run({"brauer", "inv", "--d", "3", "--r", "1"}).code == 2);
  unsetenv(cyclalg::kPrecisionEnv);

  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"brauer", "inv", "--d", "3"}).code == 2);
  CHECK(run({"brauer", "inv", "--d", "x", "--r", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  auto e = run({"--json", "brauer", "inv", "--d", "0", "--r", "1"});
  CHECK(e.code == 2);
  auto j = nlohmann::json::parse(e.out);
  CHECK(j["status"] == "error");
  CHECK(j["error"]["code"] == "BadInput");
}

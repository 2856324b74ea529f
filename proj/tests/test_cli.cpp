#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HOPFCOH_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& f) { return std::string(HOPFCOH_DATA) + "/" + f; }

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("cohomology").code == 1);
  CHECK(run("verify " + data("c2_constant.json")).code == 0);
  CHECK(run("verify /nonexistent.json").code == 1);
  CHECK(run("suite nonsense").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("verification failures exit 2 with a record") {
  auto j = nlohmann::json::parse(run("build builtin:constant-C2@Z").out);
  j["antipode"] = nlohmann::json::array({nlohmann::json::array({"1", "0"}), nlohmann::json::array({"0", "0"})});
  const std::string path = std::string(HOPFCOH_TMP) + "/broken_antipode.json";
  FILE* f = fopen(path.c_str(), "w");
  REQUIRE(f);
  const std::string text = j.dump();
  fwrite(text.data(), 1, text.size(), f);
  fclose(f);
  auto r = run("verify " + path);
  CHECK(r.code == 2);
  auto rec = nlohmann::json::parse(r.out);
  CHECK(rec["report"]["passed"] == false);
  bool witness = false;
  for (const auto& c : rec["report"]["checks"])
    if (c["passed"] == false && c.contains("witness")) witness = true;
  CHECK(witness);
}

TEST_CASE("documented command examples") {
  auto coh = nlohmann::json::parse(
      run("cohomology --group builtin:constant-C2@Z --module builtin:trivial@Z --max-degree 4").out);
  CHECK(coh["degrees"][2]["invariant_factors"] == nlohmann::json::array({"2"}));
  CHECK(coh["degrees"][2]["free_rank"] == 0);
  CHECK(coh["degrees"][0]["free_rank"] == 1);

  auto bt = nlohmann::json::parse(run("bounded-torsion --group builtin:klein@Z --max-degree 3").out);
  CHECK(bt["n"] == "4");
  CHECK(bt["passed"] == true);

  auto pr = nlohmann::json::parse(
      run("power-reductivity --group builtin:constant-C2@F2 --module " + data("c2_swap.json") + " --phi 1,1").out);
  CHECK(pr["degree"] == 2);

  CHECK(run("suite frobenius").code == 0);
  CHECK(run("suite axioms").code == 0);
}

TEST_CASE("json output is deterministic and builds round-trip") {
  for (const std::string& args : std::vector<std::string>{"cohomology --group builtin:klein@F2 --max-degree 3",
                                 "cup --group builtin:constant-C3@Z --max-degree 4",
                                 "frobenius --group builtin:constant-S3@Z", "suite axioms --seed 7",
                                 "build " + data("klein_constructor.json")}) {
    auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK_MESSAGE(a.out == b.out, args);
  }
  CHECK(run("suite axioms --seed 7").out.find("\"seed\": 7") != std::string::npos);
  auto built = run("build " + data("c2_constant.json"));
  FILE* f = fopen(data("c2_constant.json").c_str(), "r");
  REQUIRE(f);
  std::string file;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), f)) file.append(buf.data(), n);
  fclose(f);
  CHECK(built.out == file);
}

TEST_CASE("schema errors name the path") {
  const std::string path = std::string(HOPFCOH_TMP) + "/bad_comodule.json";
  FILE* f = fopen(path.c_str(), "w");
  REQUIRE(f);
  const std::string text = R"({"over": "builtin:constant-C2@Z", "rank": 1, "coaction": [["1"], ["q"]]})";
  fwrite(text.data(), 1, text.size(), f);
  fclose(f);
  const std::string cmd = std::string(HOPFCOH_CLI) + " verify " + path + " 2>&1 >/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string err;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) err.append(buf.data(), n);
  const int status = pclose(p);
  CHECK(WEXITSTATUS(status) == 1);
  CHECK(err.find("/coaction/1/0") != std::string::npos);
}

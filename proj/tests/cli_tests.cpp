#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "coherence/io.hpp"
#include "coherence/states.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(COHERENCE_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer{};
  RunResult result{-1, {}};
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buffer.data(), buffer.size(), pipe) != nullptr) {
    result.stdout_text += buffer.data();
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_text(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path);
  out << contents;
}

struct Fixture {
  std::filesystem::path qubit = temp_path("coherence_cli_qubit.json");
  std::filesystem::path diag3 = temp_path("coherence_cli_diag3.json");
  std::filesystem::path qutrit = temp_path("coherence_cli_qutrit.json");
  std::filesystem::path bad_prob = temp_path("coherence_cli_badprob.json");
  std::filesystem::path channel_out = temp_path("coherence_cli_channel.json");
  std::filesystem::path pure = temp_path("coherence_cli_pure.json");
  std::filesystem::path ensemble = temp_path("coherence_cli_ensemble.json");

  Fixture() {
    write_text(qubit,
               "{\"dim\":2,\"matrix\":[[[0.75,0],[0.25,0]],[[0.25,0],[0.25,0]]]}");
    write_text(diag3,
               "{\"dim\":3,\"matrix\":[[[0.2,0],[0,0],[0,0]],[[0,0],[0.3,0],[0,0]],"
               "[[0,0],[0,0],[0.5,0]]]}");
    write_text(qutrit,
               "{\"dim\":3,\"matrix\":[[[0.5,0],[0.2,0],[0,0]],[[0.2,0],[0.3,0],[0,0]],"
               "[[0,0],[0,0],[0.2,0]]]}");
    write_text(bad_prob,
               "{\"dim\":2,\"matrix\":[[[1.4,0],[0,0]],[[0,0],[-0.4,0]]]}");
    const double s = 1.0 / std::sqrt(2.0);
    write_text(pure, "{\"dim\":2,\"vector\":[[" + coherence::format_double(s) + ",0],[" +
                         coherence::format_double(s) + ",0]]}");
    write_text(ensemble, "{\"dim\":2,\"entries\":[{\"weight\":1.0,\"vector\":[[1,0],[0,0]]}]}");
  }

  ~Fixture() {
    for (const auto& p : {qubit, diag3, qutrit, bad_prob, channel_out, pure, ensemble}) {
      std::filesystem::remove(p);
    }
  }
};

}  // namespace

TEST_CASE("compute: analytic qubit value and deterministic output") {
  Fixture fx;
  const auto result = run_cli("compute " + fx.qubit.string() +
                              " --measure geometric --method analytic");
  CHECK(result.exit_code == 0);
  CHECK(result.stdout_text.find("\"value\":0.0669872981077806") != std::string::npos);
  CHECK(result.stdout_text.find("\"method\":\"analytic\"") != std::string::npos);

  const auto again = run_cli("compute " + fx.qubit.string() +
                             " --measure geometric --method analytic");
  CHECK(again.stdout_text == result.stdout_text);  // byte-identical
}

TEST_CASE("compute: diagonal states have zero coherence for every measure") {
  Fixture fx;
  for (const std::string measure : {"geometric", "relent", "l1"}) {
    const auto result = run_cli("compute " + fx.diag3.string() + " --measure " + measure +
                                " --method optimize --restarts 4");
    CHECK(result.exit_code == 0);
    CHECK(result.stdout_text.find("\"value\":0,") != std::string::npos);
  }
}

TEST_CASE("compute: exit codes for bad input and unsupported combinations") {
  Fixture fx;
  CHECK(run_cli("compute /nonexistent.json --measure l1").exit_code == 2);
  CHECK(run_cli("compute " + fx.qutrit.string() + " --measure relent --method analytic")
            .exit_code == 3);
  CHECK(run_cli("compute " + fx.qutrit.string() + " --measure geometric --method analytic"
                " --restarts 4").exit_code == 0);
  CHECK(run_cli("compute " + fx.qubit.string() + " --measure nonsense").exit_code == 2);
}

TEST_CASE("verify: passing suite exits 0 and prints a result object") {
  Fixture fx;
  const auto result = run_cli("verify --suite prep --dim 4 --trials 50 --seed 5");
  CHECK(result.exit_code == 0);
  CHECK(result.stdout_text.find("\"suite\":\"prep\"") != std::string::npos);
  CHECK(result.stdout_text.find("\"failures\":0") != std::string::npos);

  const auto again = run_cli("verify --suite prep --dim 4 --trials 50 --seed 5");
  CHECK(again.stdout_text == result.stdout_text);

  CHECK(run_cli("verify --suite nonsense").exit_code == 2);
  CHECK(run_cli("verify --suite mono --dim 3").exit_code == 3);
}

TEST_CASE("channel: prep construction writes a classifiable file") {
  Fixture fx;
  const auto result = run_cli("channel --make prep --state " + fx.diag3.string() + " --out " +
                              fx.channel_out.string());
  CHECK(result.exit_code == 0);
  CHECK(result.stdout_text.find("\"classes\":[\"CPTP\",\"DIO\",\"IO\",\"MIO\",\"SIO\"]") !=
        std::string::npos);
  const auto channel = coherence::read_channel_file(fx.channel_out.string());
  CHECK(channel.size() == 3);
  CHECK(channel.has(coherence::ChannelClass::SIO));

  CHECK(run_cli("channel --make prep --state " + fx.bad_prob.string() + " --out " +
                fx.channel_out.string())
            .exit_code == 5);
  CHECK(run_cli("channel --make dephase --state " + fx.qubit.string() + " --out " +
                fx.channel_out.string())
            .exit_code == 0);
  CHECK(run_cli("channel --make prep --state /nonexistent.json --out " +
                fx.channel_out.string())
            .exit_code == 2);
}

TEST_CASE("convert-check wraps the majorization criterion") {
  Fixture fx;
  const auto result = run_cli("convert-check --pure " + fx.pure.string() + " --ensemble " +
                              fx.ensemble.string());
  CHECK(result.exit_code == 0);
  CHECK(result.stdout_text.find("\"convertible\":true") != std::string::npos);
}

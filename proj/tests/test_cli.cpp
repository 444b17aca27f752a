// Exit-code and artifact contracts of the acdgen binary.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "acd/annotate.hpp"
#include "doctest.h"
#include "httplib.h"

namespace {

const std::string kData = ACD_TEST_DATA_DIR;
const std::string kBin = ACD_ACDGEN_PATH;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_env(const std::string& env_prefix, const std::string& args) {
  std::string out_file =
      (std::filesystem::temp_directory_path() / "acdgen_cli_out.txt").string();
  std::string cmd = env_prefix + kBin + " " + args + " > " + out_file + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
#ifdef _WIN32
  r.exit_code = status;
#else
  r.exit_code = WEXITSTATUS(status);
#endif
  std::ifstream in(out_file);
  std::stringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  return r;
}

RunResult run(const std::string& args) { return run_env("", args); }

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("generate on the Withdraw Funds UCS exits 0 and writes artifacts") {
  std::string dot = tmp("wf_cli.dot"), xmi = tmp("wf_cli.xmi");
  RunResult r = run("generate --in " + kData + "/withdraw_funds.ucs --fixtures " +
                    kData + "/fixtures --dot " + dot + " --xmi " + xmi);
  CHECK(r.exit_code == 0);
  CHECK(std::filesystem::file_size(dot) > 0);
  CHECK(std::filesystem::file_size(xmi) > 0);
  CHECK(r.output.find("classes: 10, relationships: 10") != std::string::npos);
}

TEST_CASE("generate exits 2 when a step is skipped as unrecognized") {
  RunResult r = run("generate --in " + kData + "/unrecognized_step.ucs --fixtures " +
                    kData + "/fixtures --dot " + tmp("unrec.dot"));
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("M2") != std::string::npos);
  CHECK(std::filesystem::file_size(tmp("unrec.dot")) > 0);  // diagram still written
}

TEST_CASE("generate exits 1 listing sentences that need fixtures") {
  RunResult r = run("generate --in " + kData + "/missing_fixture.ucs --fixtures " +
                    kData + "/fixtures --dot " + tmp("missing.dot"));
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("The system frobnicates the widget.") != std::string::npos);
}

TEST_CASE("generate without outputs or sources is a usage error") {
  RunResult no_out = run("generate --in " + kData + "/withdraw_funds.ucs --fixtures " +
                         kData + "/fixtures");
  CHECK(no_out.exit_code == 1);
  RunResult no_src = run("generate --in " + kData +
                         "/withdraw_funds.ucs --dot " + tmp("x.dot"));
  CHECK(no_src.exit_code == 1);
}

TEST_CASE("classify --explain lists rule ids and bindings") {
  RunResult r = run("classify --explain --in " + kData +
                    "/withdraw_funds.ucs --fixtures " + kData + "/fixtures");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("M3 | SVDO | SSR27") != std::string::npos);
  CHECK(r.output.find("A=enters") != std::string::npos);
  CHECK(r.output.find("GA1.guard | Conditional | SSR28") != std::string::npos);
}

TEST_CASE("metrics prints the key=value block") {
  RunResult r = run("metrics --in " + kData + "/withdraw_funds.ucs --fixtures " +
                    kData + "/fixtures");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("COcm=1.0000") != std::string::npos);
  CHECK(r.output.find("Rcm=1.0000") != std::string::npos);
}

TEST_CASE("flags override the config file") {
  // write a config pointing at the fixtures; pass the input via flag
  std::string conf = tmp("run.conf");
  {
    std::ofstream out(conf);
    out << "fixtures=" << kData << "/fixtures\n";
    out << "in=" << kData << "/unrecognized_step.ucs\n";
  }
  RunResult r = run("generate --config " + conf + " --in " + kData +
                    "/withdraw_funds.ucs --dot " + tmp("conf.dot"));
  CHECK(r.exit_code == 0);  // flag input wins over the config's exit-2 UCS
}

TEST_CASE("metrics --score ingests filled questionnaires") {
  std::string q = tmp("wf_score");
  RunResult gen = run("generate --in " + kData + "/withdraw_funds.ucs --fixtures " +
                      kData + "/fixtures --questionnaires " + q);
  REQUIRE(gen.exit_code == 0);
  // an all-ones filled sheet over the 10 emitted rows
  {
    std::ofstream c(tmp("score.classes"));
    c << "header\n";
    for (int i = 1; i <= 10; ++i)
      c << i << " | C" << i << " | 1 | 1 | 1 | 1 | 1\n";
    std::ofstream r(tmp("score.rels"));
    r << "header\n";
    for (int i = 1; i <= 10; ++i)
      r << i << " | A | B | op | 1 | 1 | 1 | 1 | 1 | 1\n";
    std::ofstream s(tmp("score.summary"));
    s << "Nsf = 15\nNsg = 1\nNrc = 0\nNrr = 0\n";
  }
  RunResult r = run("metrics --in " + kData + "/withdraw_funds.ucs --fixtures " +
                    kData + "/fixtures --classes " + tmp("score.classes") +
                    " --relationships " + tmp("score.rels") + " --summary " +
                    tmp("score.summary"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("CDcr=1") != std::string::npos);
  CHECK(r.output.find("CDrd=0") != std::string::npos);
}

TEST_CASE("the endpoint environment variable drives a full online run") {
  acd::FixtureStore store;
  store.load_directory(kData + "/fixtures");
  acd::FixtureAnnotator fixtures(std::move(store));
  httplib::Server server;
  server.Post("/parse", [&](const httplib::Request& req, httplib::Response& res) {
    try {
      res.set_content(acd::to_fixture_block(fixtures.annotate(req.body)),
                      "text/plain");
    } catch (const acd::Error&) {
      res.status = 404;
    }
  });
  int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  std::string env = "ACDGEN_PARSER_ENDPOINT=http://127.0.0.1:" +
                    std::to_string(port) + "/parse ";
  RunResult r = run_env(env, "generate --in " + kData +
                                 "/withdraw_funds.ucs --dot " + tmp("env.dot"));
  server.stop();
  t.join();
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("classes: 10, relationships: 10") != std::string::npos);
}

TEST_CASE("the fixtures subcommand records service responses") {
  acd::FixtureStore store;
  store.load_directory(kData + "/fixtures");
  acd::FixtureAnnotator fixtures(std::move(store));
  httplib::Server server;
  server.Post("/parse", [&](const httplib::Request& req, httplib::Response& res) {
    try {
      res.set_content(acd::to_fixture_block(fixtures.annotate(req.body)),
                      "text/plain");
    } catch (const acd::Error&) {
      res.status = 404;
    }
  });
  int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  std::string sentences = tmp("record.sentences");
  {
    std::ofstream out(sentences);
    out << "The motor stops.\nThe system keeps the door open.\n";
  }
  std::string recorded = tmp("recorded.conllu");
  RunResult r = run("fixtures --endpoint http://127.0.0.1:" +
                    std::to_string(port) + "/parse --sentences " + sentences +
                    " --out " + recorded);
  server.stop();
  t.join();
  CHECK(r.exit_code == 0);

  acd::FixtureStore back;
  back.load_file(recorded);
  CHECK(back.size() == 2);
  CHECK(back.find("The motor stops.").has_value());
}

TEST_CASE("two CLI runs write byte-identical files") {
  std::string d1 = tmp("det1.dot"), d2 = tmp("det2.dot");
  std::string x1 = tmp("det1.xmi"), x2 = tmp("det2.xmi");
  std::string t1 = tmp("det1.trace"), t2 = tmp("det2.trace");
  std::string base = "generate --in " + kData + "/withdraw_funds.ucs --fixtures " +
                     kData + "/fixtures";
  CHECK(run(base + " --dot " + d1 + " --xmi " + x1 + " --trace " + t1).exit_code == 0);
  CHECK(run(base + " --dot " + d2 + " --xmi " + x2 + " --trace " + t2).exit_code == 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  CHECK(slurp(d1) == slurp(d2));
  CHECK(slurp(x1) == slurp(x2));
  CHECK(slurp(t1) == slurp(t2));
}

TEST_SUITE_END();

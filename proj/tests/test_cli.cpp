#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "adderkit/adder_gen.hpp"
#include "adderkit/cell_library.hpp"
#include "adderkit/cli.hpp"
#include "adderkit/netlist.hpp"

using namespace adderkit;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "adderkit");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("adderkit_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("gen") {
  auto r = run({"gen", "--arch", "rca:2,scbcla:3x10"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("width 32\n", 0) == 0);
  CHECK(r.out == to_text(compose(preset("design4"))));

  r = run({"gen", "--arch", "ccla:1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("InvalidBlockWidth") != std::string::npos);

  r = run({"gen", "--preset", "design9"});
  CHECK(r.code == 1);
  CHECK(r.err.find("UnknownPreset") != std::string::npos);

  CHECK(run({"gen", "--preset", "design1", "--width", "16"}).code == 1);
  CHECK(run({"gen"}).code == 1);
  CHECK(run({"gen", "--arch", "rca:4", "--preset", "design1"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);

  r = run({"gen", "--arch", "ccla:3", "--expose-carries"});
  CHECK(r.out.find("outputs sum[0] sum[1] sum[2] cout c1 c2\n") != std::string::npos);
}

TEST_CASE("gen writes Verilog") {
  TempDir dir;
  const auto r = run({"gen", "--preset", "design6", "--out", dir.file("d6.net"), "--verilog", dir.file("d6.v"),
                      "--module", "cla32"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(read(dir.file("d6.net")) == to_text(compose(preset("design6"))));
  const std::string v = read(dir.file("d6.v"));
  CHECK(v.rfind("module cla32 (", 0) == 0);
  CHECK(v.find("input [31:0] a;") != std::string::npos);
  CHECK(v.find("endmodule") != std::string::npos);
}

TEST_CASE("verify") {
  auto r = run({"verify", "--preset", "design3", "--vectors", "10000"});
  CHECK(r.code == 0);
  CHECK(r.out == "pass (random, 10000 vectors)\n");

  r = run({"verify", "--arch", "ccla:3"});
  CHECK(r.code == 0);
  CHECK(r.out == "pass (exhaustive, 128 vectors)\n");

  TempDir dir;
  // Turn the first AND2 of a small adder into an OR2.
  std::string text = to_text(compose(parse_arch_spec("scbcla:3,rca:2")));
  const auto pos = text.find(" AND2 ");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 6, " OR2 ");
  write(dir.file("bad.net"), text);
  r = run({"verify", "--from-file", dir.file("bad.net")});
  CHECK(r.code == 2);
  CHECK(r.out.rfind("FAIL: counterexample a=", 0) == 0);

  // Dropping the driver of cout leaves an undriven output.
  std::string undriven = to_text(compose(parse_arch_spec("rca:2")));
  const auto last_gate = undriven.rfind("\ng");
  const auto end = undriven.find('\n', last_gate + 1);
  undriven.erase(last_gate, end - last_gate);
  write(dir.file("undriven.net"), undriven);
  r = run({"verify", "--from-file", dir.file("undriven.net")});
  CHECK(r.code == 2);
  CHECK(r.out.find("UndrivenOutput(cout)") != std::string::npos);

  CHECK(run({"verify", "--from-file", dir.file("missing.net")}).code == 1);
}

TEST_CASE("analyze") {
  auto first = run({"analyze", "--preset", "design6", "--vectors", "1024", "--seed", "1"});
  auto second = run({"analyze", "--preset", "design6", "--vectors", "1024", "--seed", "1"});
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  const auto doc = nlohmann::json::parse(first.out);
  CHECK(doc["design"] == "design6");
  CHECK(doc["gates"] == compose(preset("design6")).gates().size());
  CHECK(doc["fom_scaled"].get<double>() > 0.0);

  auto other_seed = run({"analyze", "--preset", "design6", "--seed", "2"});
  CHECK(other_seed.out != first.out);

  TempDir dir;
  CellLibrary broken = default_library();
  broken.cells.erase(CellKind::AND4);
  write(dir.file("broken.json"), serialize_library(broken));
  auto r = run({"analyze", "--preset", "design1", "--lib", dir.file("broken.json")});
  CHECK(r.code == 1);
  CHECK(r.err.find("IncompleteLibrary") != std::string::npos);

  CHECK(run({"analyze", "--preset", "design1", "--vectors", "1"}).code == 1);
  CHECK(run({"analyze", "--preset", "design1", "--interval", "0"}).code == 1);

  r = run({"analyze", "--arch", "rca:2", "--vectors", "4", "--name", "tiny", "--out", dir.file("r.json"), "--dump",
           dir.file("values.txt")});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(read(dir.file("r.json")))["design"] == "tiny");
  const std::string dump = read(dir.file("values.txt"));
  CHECK(std::count(dump.begin(), dump.end(), '\n') == 4);
}

TEST_CASE("compare") {
  auto r = run({"compare", "--table1", std::string(ADDERKIT_DATA_DIR) + "/table1.csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("design2 over design1: +7.5%") != std::string::npos);
  CHECK(r.out.find("design6 over design1: +17.9%") != std::string::npos);
  CHECK(r.out.find("design6 over design2: +9.7%") != std::string::npos);
  const auto rank1 = r.out.find("\n1 ");
  REQUIRE(rank1 != std::string::npos);
  CHECK(r.out.substr(rank1, 20).find("design6") != std::string::npos);

  r = run({"compare", "--presets", "design1..design3", "--vectors", "256", "--csv", "-"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("design,power_uw,delay_ns,area_um2,fom_scaled\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);

  r = run({"compare", "--presets", "design1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("NothingToCompare") != std::string::npos);

  r = run({"compare", "--arch", "rca:4", "--arch", "ccla:4", "--vectors", "64"});
  CHECK(r.code == 0);
}

TEST_CASE("name ranges") {
  CHECK(cli::expand_name_list("design1..design3,rca32") ==
        std::vector<std::string>{"design1", "design2", "design3", "rca32"});
  CHECK(cli::expand_name_list("design4..6") == std::vector<std::string>{"design4", "design5", "design6"});
}

TEST_CASE("export") {
  TempDir dir;
  const Netlist d5 = compose(preset("design5"));
  write(dir.file("d5.net"), to_text(d5));

  auto r = run({"export", dir.file("d5.net")});
  CHECK(r.code == 0);
  CHECK(r.out == to_text(d5));

  r = run({"export", "--from-file", dir.file("d5.net"), "--verilog", "--module", "top"});
  CHECK(r.code == 0);
  std::ostringstream expected;
  write_verilog(expected, d5, "top");
  CHECK(r.out == expected.str());

  const std::string text = to_text(d5);
  write(dir.file("cut.net"), text.substr(0, text.size() / 2));
  r = run({"export", dir.file("cut.net")});
  CHECK(r.code == 1);
  CHECK(r.err.find("ParseError") != std::string::npos);
  CHECK(r.err.find("line ") != std::string::npos);

  CHECK(run({"export"}).code == 1);
}

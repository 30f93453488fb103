#include "adderkit/cli.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "adderkit/adder_gen.hpp"
#include "adderkit/cell_library.hpp"
#include "adderkit/error.hpp"
#include "adderkit/netlist.hpp"
#include "adderkit/ppa.hpp"
#include "adderkit/sim.hpp"

namespace adderkit::cli {

namespace {

struct DesignSource {
  std::string arch;
  std::string preset;
  std::string from_file;
  std::optional<std::size_t> width;
};

struct SimOptions {
  std::size_t vectors = kDefaultVectorCount;
  std::uint64_t seed = 1;
  double interval_ns = kDefaultIntervalNs;
  std::string lib_path;
};

struct Design {
  std::string name;
  std::string arch;
  Netlist netlist;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
  if (!out) throw UsageError("failed writing '" + path + "'");
}

// Writes to `path`, or to `fallback` when the path is empty or "-".
void emit(const std::string& path, const std::string& content, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << content;
  } else {
    write_file(path, content);
  }
}

void add_source_options(CLI::App* cmd, DesignSource& src, bool allow_file) {
  cmd->add_option("--arch", src.arch, "Architecture spec, e.g. \"rca:2,scbcla:3x10\"");
  cmd->add_option("--preset", src.preset, "Preset design (design1..design6, rca32)");
  if (allow_file) cmd->add_option("--from-file", src.from_file, "Netlist text file");
  cmd->add_option("--width", src.width, "Expected operand width");
}

void add_sim_options(CLI::App* cmd, SimOptions& sim) {
  cmd->add_option("--vectors", sim.vectors, "Number of random vectors")->capture_default_str();
  cmd->add_option("--seed", sim.seed, "Vector stream seed")->capture_default_str();
  cmd->add_option("--interval", sim.interval_ns, "Time between vectors in ns")->capture_default_str();
  cmd->add_option("--lib", sim.lib_path, "Cell library JSON (default: built-in synthetic library)");
}

std::string file_stem(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find_last_of('.');
  return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

Design load_design(const DesignSource& src) {
  const int given = !src.arch.empty() + !src.preset.empty() + !src.from_file.empty();
  if (given != 1) throw UsageError("give exactly one of --arch, --preset or --from-file");

  Design d{"", "", Netlist::from_parts(1, {}, {}, {}, 0, {})};
  if (!src.from_file.empty()) {
    d.name = file_stem(src.from_file);
    d.netlist = parse_netlist(read_file(src.from_file));
  } else {
    const ArchitectureSpec spec = src.preset.empty() ? parse_arch_spec(src.arch) : preset(src.preset);
    d.name = src.preset.empty() ? to_string(spec) : src.preset;
    d.arch = to_string(spec);
    d.netlist = compose(spec);
  }
  if (src.width && *src.width != d.netlist.width()) {
    throw Error(ErrorCode::InvalidWidth, "design is " + std::to_string(d.netlist.width()) + " bits wide, --width says " +
                                             std::to_string(*src.width));
  }
  return d;
}

CellLibrary load_lib(const SimOptions& sim) {
  return sim.lib_path.empty() ? default_library() : load_library(read_file(sim.lib_path));
}

std::string hex(std::uint64_t v) {
  std::ostringstream ss;
  ss << "0x" << std::hex << v;
  return ss.str();
}

void require_valid(const Netlist& netlist) {
  const auto violations = validate(netlist);
  if (violations.empty()) return;
  std::string msg = "netlist is malformed:";
  for (const auto& v : violations) msg += " " + std::string(to_string(v.kind)) + "(" + v.subject + ")";
  throw UsageError(msg);
}

AnalysisReport analyze_design(const Design& d, const CellLibrary& lib, const SimOptions& sim) {
  require_valid(d.netlist);
  const ToggleStats stats = run_vectors(d.netlist, sim.vectors, sim.seed, sim.interval_ns);
  return analyze(d.netlist, lib, stats, d.name, d.arch);
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_gen(const DesignSource& src, const std::string& out_path, const std::string& verilog_path,
            const std::string& module, bool expose, std::ostream& out) {
  if (!src.from_file.empty()) throw UsageError("gen takes --arch or --preset");
  DesignSource s = src;
  Design d = load_design(s);
  if (expose) {
    const ArchitectureSpec spec = src.preset.empty() ? parse_arch_spec(src.arch) : preset(src.preset);
    d.netlist = compose(spec, ComposeOptions{true});
  }
  emit(out_path, to_text(d.netlist), out);
  if (!verilog_path.empty()) {
    std::ostringstream v;
    write_verilog(v, d.netlist, module.empty() ? "adder" + std::to_string(d.netlist.width()) : module);
    emit(verilog_path, v.str(), out);
  }
  return kExitOk;
}

int cmd_verify(const DesignSource& src, const SimOptions& sim, bool force_exhaustive, std::ostream& out) {
  const Design d = load_design(src);
  const auto violations = validate(d.netlist);
  if (!violations.empty()) {
    out << "FAIL: netlist is malformed:";
    for (const auto& v : violations) out << ' ' << to_string(v.kind) << '(' << v.subject << ')';
    out << '\n';
    return kExitVerifyFailed;
  }
  const bool exhaustive = force_exhaustive || d.netlist.width() <= 10;
  const VerifyResult r =
      exhaustive ? verify_exhaustive(d.netlist) : verify_random(d.netlist, sim.vectors, sim.seed);
  if (r.pass()) {
    out << "pass (" << (exhaustive ? "exhaustive" : "random") << ", " << r.rows_checked << " vectors)\n";
    return kExitOk;
  }
  const Counterexample& c = *r.counterexample;
  out << "FAIL: counterexample a=" << hex(c.input.a) << " b=" << hex(c.input.b) << " cin=" << c.input.cin
      << " expected sum=" << hex(c.expected_sum) << " cout=" << c.expected_cout << " got sum=" << hex(c.actual_sum)
      << " cout=" << c.actual_cout << '\n';
  return kExitVerifyFailed;
}

int cmd_analyze(const DesignSource& src, const SimOptions& sim, const std::string& name, const std::string& out_path,
                const std::string& dump_path, std::ostream& out) {
  Design d = load_design(src);
  if (!name.empty()) d.name = name;
  const CellLibrary lib = load_lib(sim);
  const AnalysisReport report = analyze_design(d, lib, sim);
  if (!dump_path.empty()) {
    std::ostringstream dump;
    const auto vectors = generate_vectors(d.netlist.width(), sim.vectors, sim.seed);
    dump_values(dump, d.netlist, vectors);
    write_file(dump_path, dump.str());
  }
  emit(out_path, report_json(report), out);
  return kExitOk;
}

void print_table(std::ostream& out, const std::vector<AnalysisReport>& reports, const Comparison& cmp) {
  std::size_t name_w = 6;
  for (const auto& r : reports) name_w = std::max(name_w, r.design_name.size());
  std::ostringstream ss;
  ss << std::left << std::setw(5) << "rank" << std::setw(static_cast<int>(name_w) + 2) << "design" << std::right
     << std::setw(12) << "power_uw" << std::setw(11) << "delay_ns" << std::setw(12) << "area_um2" << std::setw(12)
     << "fom_scaled" << '\n';
  ss << std::fixed;
  for (std::size_t rank = 0; rank < cmp.ranking.size(); ++rank) {
    const auto& r = reports[cmp.ranking[rank]];
    ss << std::left << std::setw(5) << rank + 1 << std::setw(static_cast<int>(name_w) + 2) << r.design_name
       << std::right << std::setprecision(3) << std::setw(12) << r.power_uw << std::setw(11) << r.delay_ns
       << std::setw(12) << r.area_um2 << std::setw(12) << r.fom_scaled << '\n';
  }
  ss << "\nFOM improvements:\n" << std::setprecision(1);
  for (std::size_t i = 0; i < cmp.ranking.size(); ++i) {
    for (std::size_t j = i + 1; j < cmp.ranking.size(); ++j) {
      const std::size_t x = cmp.ranking[i];
      const std::size_t y = cmp.ranking[j];
      ss << "  " << reports[x].design_name << " over " << reports[y].design_name << ": "
         << std::showpos << cmp.improvement[x][y] << std::noshowpos << "%\n";
    }
  }
  out << ss.str();
}

int cmd_compare(const std::string& presets, const std::vector<std::string>& archs, const std::string& table1,
                const SimOptions& sim, const std::string& csv_path, std::ostream& out) {
  std::vector<AnalysisReport> reports;
  if (!table1.empty()) {
    if (!presets.empty() || !archs.empty()) throw UsageError("--table1 cannot be combined with --presets/--arch");
    std::istringstream in(read_file(table1));
    reports = read_metrics_csv(in);
  } else {
    const CellLibrary lib = load_lib(sim);
    std::vector<DesignSource> sources;
    if (!presets.empty()) {
      for (const auto& name : expand_name_list(presets)) sources.push_back(DesignSource{"", name, "", {}});
    }
    for (const auto& a : archs) sources.push_back(DesignSource{a, "", "", {}});
    for (const auto& s : sources) reports.push_back(analyze_design(load_design(s), lib, sim));
  }
  const Comparison cmp = compare(reports);
  if (csv_path == "-") {
    write_comparison_csv(out, reports, cmp);
    return kExitOk;
  }
  print_table(out, reports, cmp);
  if (!csv_path.empty()) {
    std::ostringstream csv;
    write_comparison_csv(csv, reports, cmp);
    write_file(csv_path, csv.str());
  }
  return kExitOk;
}

int cmd_export(const std::string& input, bool verilog, const std::string& module, const std::string& out_path,
               std::ostream& out) {
  const Netlist netlist = parse_netlist(read_file(input));
  if (verilog) {
    std::ostringstream v;
    write_verilog(v, netlist, module.empty() ? "adder" + std::to_string(netlist.width()) : module);
    emit(out_path, v.str(), out);
  } else {
    emit(out_path, to_text(netlist), out);
  }
  return kExitOk;
}

}  // namespace

std::vector<std::string> expand_name_list(const std::string& text) {
  std::vector<std::string> names;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string clean;
    for (char ch : item) {
      if (!std::isspace(static_cast<unsigned char>(ch))) clean.push_back(ch);
    }
    if (clean.empty()) continue;
    const auto dots = clean.find("..");
    if (dots == std::string::npos) {
      names.push_back(clean);
      continue;
    }
    const std::string lo = clean.substr(0, dots);
    const std::string hi = clean.substr(dots + 2);
    auto split = [](const std::string& s) {
      std::size_t i = s.size();
      while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
      return std::pair{s.substr(0, i), s.substr(i)};
    };
    const auto [lo_prefix, lo_num] = split(lo);
    const auto [hi_prefix, hi_num] = split(hi);
    if (lo_num.empty() || hi_num.empty() || (!hi_prefix.empty() && hi_prefix != lo_prefix)) {
      throw UsageError("bad range '" + clean + "'");
    }
    const int first = std::stoi(lo_num);
    const int last = std::stoi(hi_num);
    if (last < first || last - first > 1000) throw UsageError("bad range '" + clean + "'");
    for (int i = first; i <= last; ++i) names.push_back(lo_prefix + std::to_string(i));
  }
  return names;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gate-level adder generation, verification and power/delay/area analysis", "adderkit"};
  app.require_subcommand(1);

  DesignSource src;
  SimOptions sim;
  std::string out_path;
  std::string verilog_path;
  std::string module;
  std::string name;
  std::string dump_path;
  std::string presets;
  std::vector<std::string> archs;
  std::string table1;
  std::string csv_path;
  std::string input;
  bool expose = false;
  bool exhaustive = false;
  bool verilog = false;

  auto* gen = app.add_subcommand("gen", "Generate a netlist");
  add_source_options(gen, src, false);
  gen->add_option("--out", out_path, "Netlist text output (default: stdout)");
  gen->add_option("--verilog", verilog_path, "Also write structural Verilog to this path ('-' for stdout)");
  gen->add_option("--module", module, "Verilog module name");
  gen->add_flag("--expose-carries", expose, "List lookahead carries as primary outputs");

  auto* verify = app.add_subcommand("verify", "Check a design against integer addition");
  add_source_options(verify, src, true);
  add_sim_options(verify, sim);
  verify->add_flag("--exhaustive", exhaustive, "Enumerate every input even above 10 bits");

  auto* analyze_cmd = app.add_subcommand("analyze", "Report power, delay, area and FOM");
  add_source_options(analyze_cmd, src, true);
  add_sim_options(analyze_cmd, sim);
  analyze_cmd->add_option("--name", name, "Design name in the report");
  analyze_cmd->add_option("--out", out_path, "JSON output (default: stdout)");
  analyze_cmd->add_option("--dump", dump_path, "Write per-vector net values to this file");

  auto* compare_cmd = app.add_subcommand("compare", "Rank designs by FOM");
  compare_cmd->add_option("--presets", presets, "Comma-separated presets; ranges like design1..design6");
  compare_cmd->add_option("--arch", archs, "Architecture spec (repeatable)");
  compare_cmd->add_option("--table1", table1, "CSV of design,power_uw,delay_ns,area_um2; skips simulation");
  compare_cmd->add_option("--csv", csv_path, "Write the ranking as CSV ('-' replaces the text table)");
  add_sim_options(compare_cmd, sim);

  auto* export_cmd = app.add_subcommand("export", "Re-emit a saved netlist");
  export_cmd->add_option("input", input, "Netlist text file");
  export_cmd->add_option("--from-file", input, "Netlist text file");
  export_cmd->add_flag("--verilog", verilog, "Emit structural Verilog instead of netlist text");
  export_cmd->add_option("--module", module, "Verilog module name");
  export_cmd->add_option("--out", out_path, "Output file (default: stdout)");

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();  // program name
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(src, out_path, verilog_path, module, expose, out);
    if (*verify) return cmd_verify(src, sim, exhaustive, out);
    if (*analyze_cmd) return cmd_analyze(src, sim, name, out_path, dump_path, out);
    if (*compare_cmd) return cmd_compare(presets, archs, table1, sim, csv_path, out);
    if (*export_cmd) {
      if (input.empty()) throw UsageError("export needs an input netlist file");
      return cmd_export(input, verilog, module, out_path, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace adderkit::cli

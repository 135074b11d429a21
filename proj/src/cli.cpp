#include "kdiamond/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "kdiamond/audit.hpp"
#include "kdiamond/parallel.hpp"
#include "kdiamond/qseries.hpp"
#include "kdiamond/rademacher.hpp"
#include "kdiamond/report.hpp"
#include "kdiamond/turan.hpp"

namespace kdiamond {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::int64_t to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw std::invalid_argument(key + ": not an integer: '" + v + "'");
  return x;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// "2..13", "5" or "2,4,6"
std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> ds;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto lo = to_int("d", text.substr(0, dots));
    const auto hi = to_int("d", text.substr(dots + 2));
    if (lo > hi) throw UsageError("empty degree range '" + text + "'");
    for (auto d = lo; d <= hi; ++d) ds.push_back(static_cast<int>(d));
  } else {
    for (const auto& part : split(text, ',')) ds.push_back(static_cast<int>(to_int("d", part)));
  }
  if (ds.empty()) throw UsageError("no degrees given");
  for (int d : ds)
    if (d < 1 || d > 64) throw UsageError("degrees must lie in 1..64");
  return ds;
}

std::vector<std::int64_t> parse_points(const std::string& text) {
  if (text == "default") return default_points();
  if (text == "boundary") return boundary_points();
  std::vector<std::int64_t> out;
  for (const auto& part : split(text, ',')) out.push_back(to_int("points", part));
  if (out.empty()) throw UsageError("no audit points given");
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void check_format(const RunConfig& cfg) {
  require(cfg.format == "json" || cfg.format == "csv" || cfg.format == "table",
          "format must be json, csv or table");
  require(cfg.precision_cap >= 64, "precision cap must be at least 64 bits");
}

int cmd_coeffs(const RunConfig& cfg, std::ostream& out) {
  require(cfg.k >= 1, "k must be at least 1");
  require(cfg.n >= 0, "n must be nonnegative");
  const auto series = delta_coeffs(cfg.k, static_cast<std::size_t>(cfg.n));
  if (cfg.format == "csv") out << coeff_csv_header() << '\n';
  for (std::int64_t i = 0; i <= cfg.n; ++i) {
    const auto& c = series[static_cast<std::size_t>(i)];
    if (cfg.format == "json") {
      out << coeff_json(cfg.k, i, c) << '\n';
    } else if (cfg.format == "csv") {
      out << coeff_csv(i, c) << '\n';
    } else {
      out << std::setw(8) << i << "  " << c.get_str() << '\n';
    }
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(cfg.k >= 1, "k must be at least 1");
  require(cfg.from >= 1 && cfg.to >= cfg.from, "need 1 <= from <= to");
  const EtaQuotient q = EtaQuotient::broken_diamond(cfg.k);
  if (cfg.k >= 3) {
    const Applicability a = applicable(q);
    nlohmann::ordered_json j;
    j["k"] = cfg.k;
    j["applicable"] = a.applicable;
    j["witness"] = a.witness ? nlohmann::ordered_json(*a.witness) : nlohmann::ordered_json(nullptr);
    j["reason"] = a.reason;
    out << j.dump() << '\n';
    err << "the series does not apply to Delta_" << cfg.k;
    if (a.witness) err << " (witness j = " << *a.witness << ")";
    err << '\n';
    return kExitUsage;
  }
  const auto series = delta_coeffs(cfg.k, static_cast<std::size_t>(cfg.to));
  SussmanEngine engine(q);
  engine.prepare(engine.choose_truncation(cfg.to));
  const auto count = static_cast<std::size_t>(cfg.to - cfg.from + 1);
  std::vector<VerifyRow> rows(count);
  parallel_for(count, [&](std::size_t i) {
    const std::int64_t n = cfg.from + static_cast<std::int64_t>(i);
    rows[i] = verify_point(engine, cfg.k, n, series[static_cast<std::size_t>(n)], cfg.precision_cap);
  });
  bool violation = false;
  bool undecided = false;
  if (cfg.format == "csv") out << verify_csv_header() << '\n';
  for (const auto& r : rows) {
    if (cfg.format == "json") {
      out << verify_json(r) << '\n';
    } else if (cfg.format == "csv") {
      out << verify_csv(r) << '\n';
    } else {
      out << std::setw(6) << r.n << "  J=" << std::setw(4) << r.truncation << "  p=" << std::setw(5) << r.precision
          << "  " << (r.round_trip ? "ok      " : "MISMATCH") << "  " << r.exact.get_str() << '\n';
    }
    if (!r.isolated) {
      undecided = true;
    } else if (!r.round_trip || !r.within_envelope) {
      violation = true;
    }
  }
  if (violation) return kExitViolation;
  if (undecided) return kExitUndecided;
  return kExitOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  require(cfg.k >= 1, "k must be at least 1");
  require(cfg.horizon >= 0, "horizon must be nonnegative");
  const auto ds = parse_degrees(cfg.d);
  const int dmax = *std::max_element(ds.begin(), ds.end());
  const auto series = delta_coeffs(cfg.k, static_cast<std::size_t>(cfg.horizon + dmax));
  std::vector<TuranScanResult> results;
  for (int d : ds) results.push_back(scan_minimal_shift(series.view(), d, cfg.horizon, cfg.margin, cfg.k));
  if (cfg.format == "json") {
    for (const auto& r : results) out << scan_json(r) << '\n';
  } else if (cfg.format == "csv") {
    out << scan_table_csv(results);
  } else {
    for (const auto& r : results) {
      out << "k=" << r.k << " d=" << std::setw(2) << r.d << "  N=" << std::setw(5)
          << (r.minimal_shift ? std::to_string(*r.minimal_shift) : "-") << "  failures=" << r.failures.size()
          << "  " << (r.status == ScanStatus::kStable ? "stable" : "unstable at horizon") << '\n';
    }
    out << "horizon " << cfg.horizon << "; hyperbolicity beyond it is not checked\n";
  }
  return kExitOk;
}

int cmd_audit(const RunConfig& cfg, std::ostream& out) {
  std::vector<int> ks{1, 2};
  if (cfg.k != -1) {
    require(cfg.k == 1 || cfg.k == 2, "audits cover k = 1 and k = 2");
    ks = {cfg.k};
  }
  const auto points = parse_points(cfg.points);
  AuditOptions opt;
  opt.cap = cfg.precision_cap;

  std::vector<std::string> sets;
  for (const auto& name : split(cfg.set, ',')) {
    if (name == "theorems") {
      for (const char* t : {"sandwich", "ratio", "gk", "remainder", "bessel", "threshold"}) sets.emplace_back(t);
    } else if (name == "all") {
      for (const char* t : {"sandwich", "ratio", "gk", "remainder", "bessel", "threshold", "tail"}) sets.emplace_back(t);
    } else {
      sets.push_back(name);
    }
  }
  require(!sets.empty(), "no audit set given");

  std::vector<std::function<AuditReport()>> tasks;
  for (const auto& name : sets) {
    if (name == "sandwich" || name == "ratio" || name == "gk" || name == "remainder") {
      for (int k : ks) {
        for (auto n : points) {
          if (name == "sandwich") tasks.emplace_back([=] { return audit_sandwich(k, n, opt); });
          if (name == "ratio") tasks.emplace_back([=] { return audit_ratio(k, n, opt); });
          if (name == "gk") tasks.emplace_back([=] { return audit_logconcavity_chain(k, n, opt); });
          if (name == "remainder") tasks.emplace_back([=] { return audit_remainder_ratio(k, n, opt); });
        }
      }
    } else if (name == "bessel") {
      const std::vector<std::string> ss = cfg.s.empty() ? std::vector<std::string>{"231", "500", "152*sqrt(7/3)"} : cfg.s;
      for (const auto& text : ss) {
        const SValue s = parse_s(text);
        tasks.emplace_back([=] { return audit_bessel_upper_i1(s, opt); });
        tasks.emplace_back([=] { return audit_bessel_two_sided(s, opt); });
      }
    } else if (name == "tail") {
      const std::vector<std::string> ss = cfg.s.empty() ? std::vector<std::string>{"10", "50", "152*sqrt(7/3)"} : cfg.s;
      const std::vector<std::int64_t> ns = cfg.N.empty() ? std::vector<std::int64_t>{2, 5, 10} : cfg.N;
      for (const auto& text : ss) {
        const SValue s = parse_s(text);
        for (auto big_n : ns) tasks.emplace_back([=] { return audit_tail_sum(s, big_n, opt); });
      }
    } else if (name == "threshold") {
      for (int k : ks) tasks.emplace_back([=] { return audit_x_threshold(k, opt); });
    } else {
      throw UsageError("unknown audit set '" + name + "'");
    }
  }

  const auto reports = run_audits(tasks);
  if (cfg.format == "json") {
    for (const auto& r : reports) out << audit_json(r) << '\n';
  } else if (cfg.format == "csv") {
    out << audit_csv_header() << '\n';
    for (const auto& r : reports) out << audit_csv(r) << '\n';
  } else {
    out << audit_summary_table(summarize(reports));
  }

  bool refuted = false;
  bool undecided = false;
  bool out_of_range = false;
  for (const auto& r : reports) {
    refuted = refuted || r.verdict == Verdict::kCertifiedFalse;
    undecided = undecided || r.verdict == Verdict::kUndecided;
    out_of_range = out_of_range || r.verdict == Verdict::kOutOfRange;
  }
  if (refuted) return kExitViolation;
  if (undecided) return kExitUndecided;
  if (out_of_range) return kExitUsage;
  return kExitOk;
}

int cmd_mult(const RunConfig& cfg, std::ostream& out) {
  require(cfg.k >= 1, "k must be at least 1");
  require(cfg.a >= 1 && cfg.b >= 1, "need a, b >= 1");
  const auto v = multiplicative_check(cfg.k, cfg.a, cfg.b);
  if (cfg.format == "json") {
    out << violations_json(cfg.k, cfg.a, cfg.b, v) << '\n';
  } else if (cfg.format == "csv") {
    out << violations_csv_header() << '\n';
    for (const auto& x : v) out << violations_csv(x) << '\n';
  } else {
    out << "k=" << cfg.k << " a<=" << cfg.a << " b<=" << cfg.b << "  violations: " << v.size() << '\n';
    for (const auto& x : v) out << "  (" << x.a << ", " << x.b << ")\n";
  }
  return v.empty() ? kExitOk : kExitViolation;
}

int cmd_seed_table(const RunConfig& cfg, std::ostream& out) {
  require(cfg.horizon >= 0, "horizon must be nonnegative");
  std::vector<TuranScanResult> scans;
  bool all_match = true;
  for (int k : {1, 2}) {
    const auto series = delta_coeffs(k, static_cast<std::size_t>(cfg.horizon + 13));
    const auto& ref = reference_minimal_shifts(k);
    for (int d = 2; d <= 13; ++d) {
      scans.push_back(scan_minimal_shift(series.view(), d, cfg.horizon, cfg.margin, k));
      const auto& r = scans.back();
      all_match = all_match && r.minimal_shift && *r.minimal_shift == ref[static_cast<std::size_t>(d - 2)];
    }
    const SussmanConstants c = constants(EtaQuotient::broken_diamond(k));
    for (std::int64_t j = 1; j <= 10; ++j) {
      const auto i = static_cast<std::size_t>(j - 1);
      all_match = all_match && c.c3_at(j) == reference_alpha(k)[i] && c.beta_at(j) == reference_beta(k)[i];
    }
  }
  out << seed_table_markdown(scans);
  return all_match ? kExitOk : kExitViolation;
}

std::string find_config_path(int argc, const char* const argv[]) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return "";
}

}  // namespace

long default_precision_cap() {
  const char* env = std::getenv("KDIAMOND_PRECISION_CAP");
  if (env == nullptr || *env == '\0') return 4096;
  const auto v = to_int("KDIAMOND_PRECISION_CAP", env);
  if (v < 64) throw std::invalid_argument("KDIAMOND_PRECISION_CAP must be at least 64");
  return static_cast<long>(v);
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::map<std::string, std::string> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    entries[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
  }
  return entries;
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "k") {
    cfg.k = static_cast<int>(to_int(key, value));
  } else if (key == "n") {
    cfg.n = to_int(key, value);
  } else if (key == "from") {
    cfg.from = to_int(key, value);
  } else if (key == "to") {
    cfg.to = to_int(key, value);
  } else if (key == "d") {
    cfg.d = value;
  } else if (key == "horizon") {
    cfg.horizon = to_int(key, value);
  } else if (key == "margin") {
    cfg.margin = to_int(key, value);
  } else if (key == "precision-cap") {
    cfg.precision_cap = static_cast<long>(to_int(key, value));
  } else if (key == "format") {
    cfg.format = value;
  } else if (key == "output") {
    cfg.output = value;
  } else if (key == "set") {
    cfg.set = value;
  } else if (key == "points") {
    cfg.points = value;
  } else if (key == "s") {
    cfg.s = split(value, ';');
  } else if (key == "N") {
    cfg.N.clear();
    for (const auto& part : split(value, ',')) cfg.N.push_back(to_int(key, part));
  } else if (key == "a") {
    cfg.a = to_int(key, value);
  } else if (key == "b") {
    cfg.b = to_int(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

int run_cli(int argc, const char* const argv[], std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg.precision_cap = default_precision_cap();
    if (const auto path = find_config_path(argc, argv); !path.empty())
      for (const auto& [key, value] : read_config_file(path)) apply_config_entry(cfg, key, value);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Exact and certified computations for broken k-diamond partitions", "kdiamond"};
  app.require_subcommand(1, 1);
  app.fallthrough();  // subcommands inherit this, so global flags may follow them
  std::string config_path;
  app.add_option("--config", config_path, "key = value file with defaults for any flag");
  app.add_option("--format", cfg.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--output", cfg.output, "write to this file instead of stdout");
  app.add_option("--precision-cap", cfg.precision_cap, "largest working precision in bits");

  auto* coeffs = app.add_subcommand("coeffs", "exact coefficients Delta_k(0..n)");
  coeffs->add_option("--k", cfg.k);
  coeffs->add_option("--n", cfg.n);

  auto* verify = app.add_subcommand("verify", "series evaluation against exact coefficients");
  verify->add_option("--k", cfg.k);
  verify->add_option("--from", cfg.from);
  verify->add_option("--to", cfg.to);

  auto* scan = app.add_subcommand("scan", "minimal shifts for Jensen hyperbolicity");
  scan->add_option("--k", cfg.k);
  scan->add_option("--d", cfg.d, "degree, list or range such as 2..13");
  scan->add_option("--horizon", cfg.horizon);
  scan->add_option("--margin", cfg.margin, "failures this close to the horizon make a scan unstable");

  auto* audit = app.add_subcommand("audit", "interval certification of inequalities at sample points");
  audit->add_option("--set", cfg.set, "sandwich, ratio, gk, remainder, bessel, tail, threshold, theorems or all");
  audit->add_option("--k", cfg.k, "restrict to one k (default both)");
  audit->add_option("--points", cfg.points, "default, boundary or a comma list of n");
  audit->add_option("--s", cfg.s, "Bessel arguments such as 231 or 152*sqrt(7/3)");
  audit->add_option("--N", cfg.N, "tail sum start indices");

  auto* mult = app.add_subcommand("mult", "check Delta_k(a) Delta_k(b) >= Delta_k(a + b)");
  mult->add_option("--k", cfg.k);
  mult->add_option("--a", cfg.a);
  mult->add_option("--b", cfg.b);

  auto* seed = app.add_subcommand("seed-table", "Markdown comparison with reference tables");
  seed->add_option("--horizon", cfg.horizon);
  seed->add_option("--margin", cfg.margin);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (cfg.k == -1 && command != "audit") cfg.k = 1;

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      err << "error: cannot write '" << cfg.output << "'\n";
      return kExitUsage;
    }
  }
  std::ostream& sink = cfg.output.empty() ? out : file;

  try {
    check_format(cfg);
    if (command == "coeffs") return cmd_coeffs(cfg, sink);
    if (command == "verify") return cmd_verify(cfg, sink, err);
    if (command == "scan") return cmd_scan(cfg, sink);
    if (command == "audit") return cmd_audit(cfg, sink);
    if (command == "mult") return cmd_mult(cfg, sink);
    if (command == "seed-table") return cmd_seed_table(cfg, sink);
  } catch (const PrecisionExhausted& e) {
    err << "undecided: " << e.what() << '\n';
    return kExitUndecided;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace kdiamond

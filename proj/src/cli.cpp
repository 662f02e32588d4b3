#include "unitfrac/cli.hpp"

#include "unitfrac/reporting.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace unitfrac::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string a = "4";
  std::string n;
  std::string from;
  std::string to;
  std::string x;
  std::string y;
  std::string z;
  std::string t;
  std::string t_from;
  std::string t_to;
  std::string preset;
  std::string x_factor;
  std::string t_window;
  std::string route;
  std::string format;
  std::string out;
  std::string checkpoint;
  std::vector<std::string> tables;
  unsigned jobs = 0;
};

Natural parse_natural(const std::string& text, const char* flag) {
  try {
    return Natural::parse(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": expected a non-negative integer, got '" + text + "'");
  }
}

Natural require_natural(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  return parse_natural(text, flag);
}

Natural parse_numerator(const Options& o) {
  Natural a = require_natural(o.a, "-a");
  if (a < Natural(2)) throw UsageError("-a must be >= 2");
  return a;
}

Natural parse_denominator(const std::string& text, const char* flag) {
  Natural n = require_natural(text, flag);
  if (n < Natural(2)) throw UsageError(std::string(flag) + " must be >= 2");
  return n;
}

ScanConfig scan_config(const Options& o, const ScanConfig& fallback) {
  ScanConfig cfg = fallback;
  if (o.preset == "paper-tables") {
    cfg = ScanConfig::paper_tables();
  } else if (o.preset == "paper-coverage") {
    cfg = ScanConfig::paper_coverage();
  } else if (!o.preset.empty()) {
    throw UsageError("--preset must be paper-tables or paper-coverage");
  }
  if (!o.x_factor.empty()) cfg.x_ceiling_factor = parse_natural(o.x_factor, "--x-factor").as_u64();
  if (!o.t_window.empty()) cfg.t_window = parse_natural(o.t_window, "--t-window").as_u64();
  if (cfg.x_ceiling_factor < 1 || cfg.t_window < 1) throw UsageError("--x-factor and --t-window must be >= 1");
  return cfg;
}

std::optional<Format> report_format(const Options& o) {
  if (o.format.empty()) return std::nullopt;
  auto f = parse_format(o.format);
  if (!f) throw UsageError("--format must be csv, json or markdown");
  return f;
}

// Human text goes to stdout unless --format is given without --out, in
// which case stdout carries the machine-readable report instead.
struct Output {
  std::ostream& out;
  const Options& opts;
  std::ostringstream human;

  void finish(const std::function<std::string(Format)>& render) {
    auto fmt = report_format(opts);
    if (!opts.out.empty()) {
      std::ofstream file(opts.out, std::ios::binary | std::ios::trunc);
      file << render(fmt.value_or(Format::Csv));
      if (!file) throw std::runtime_error("cannot write " + opts.out);
      out << human.str();
    } else if (fmt) {
      out << render(*fmt);
    } else {
      out << human.str();
    }
  }
};

std::string percent_text(const Rational& fraction) { return round_half_up(fraction * Rational(100), 2) + "%"; }

std::string join(const std::vector<Natural>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s;
}

std::vector<TableRow> rows_of(const std::vector<Certificate>& certs) {
  std::vector<TableRow> rows;
  rows.reserve(certs.size());
  for (const auto& c : certs) rows.push_back(render_row(c.instance(), c, 4));
  return rows;
}

RunOptions run_options(const Options& o) {
  RunOptions run;
  run.jobs = o.jobs;
  if (!o.checkpoint.empty()) run.checkpoint = o.checkpoint;
  return run;
}

// --- subcommands -------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out) {
  Instance inst(parse_numerator(o), parse_denominator(o.n, "-n"));
  Natural x = require_natural(o.x, "-x");
  Natural y = require_natural(o.y, "-y");
  Natural z = require_natural(o.z, "-z");
  if (x.is_zero() || y.is_zero() || z.is_zero()) throw UsageError("-x, -y and -z must be >= 1");
  Triple triple(x, y, z);
  Verdict v = verify_decomposition(inst, triple);
  Output io{out, o, {}};
  io.human << (v.holds ? "holds" : "fails") << ": " << inst.a() << "/" << inst.n() << " = " << v.lhs
           << ", 1/" << x << " + 1/" << y << " + 1/" << z << " = " << v.rhs << "\n";
  io.finish([&](Format f) { return emit({render_triple(inst, triple, std::nullopt, 4)}, f); });
  return v.holds ? kOk : kNotFound;
}

std::optional<Certificate> decompose_at_point(const Instance& inst, const Options& o, std::optional<Route> route) {
  Natural x = require_natural(o.x, "-x");
  std::optional<Natural> t;
  if (!o.t.empty()) t = parse_natural(o.t, "-t");
  auto need_t = [&]() -> const Natural& {
    if (!t) throw UsageError("this route needs -t together with -x");
    return *t;
  };
  if (!route) {
    if (!t) return formula_one_at(inst, x);
    if (auto c = formula_two_at(inst, x, *t)) return c;
    return explore_t_param(inst, x, *t);
  }
  switch (*route) {
    case Route::Trivial: throw UsageError("--route trivial takes no -x");
    case Route::FormulaOne: return formula_one_at(inst, x);
    case Route::FormulaTwo: return formula_two_at(inst, x, need_t());
    case Route::Vieta: return explore_t_param(inst, x, need_t());
  }
  return std::nullopt;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  Instance inst(parse_numerator(o), parse_denominator(o.n, "-n"));
  ScanConfig cfg = scan_config(o, ScanConfig::paper_tables());
  std::optional<Route> route;
  if (!o.route.empty()) {
    route = parse_route(o.route);
    if (!route) throw UsageError("--route must be trivial, formula-one, formula-two or vieta");
  }
  if (!o.t.empty() && o.x.empty()) throw UsageError("-t needs -x");

  std::optional<Certificate> cert;
  if (!o.x.empty()) {
    cert = decompose_at_point(inst, o, route);
  } else if (route) {
    switch (*route) {
      case Route::Trivial: cert = trivial_decompose(inst); break;
      case Route::FormulaOne: cert = formula_one_scan(inst, cfg); break;
      case Route::FormulaTwo: cert = formula_two_scan(inst, cfg); break;
      case Route::Vieta: throw UsageError("--route vieta needs -x and -t");
    }
  } else {
    cert = trivial_decompose(inst);
    if (!cert) cert = formula_one_scan(inst, cfg);
    if (!cert) cert = formula_two_scan(inst, cfg);
  }

  Output io{out, o, {}};
  if (!inst.in_conjecture_regime()) io.human << "note: a < 4 is outside the conjecture regime\n";
  if (cert) {
    io.human << "certificate: " << cert->describe() << "\n"
             << "route: " << to_string(cert->route()) << "\n"
             << "x = " << cert->triple().x() << ", y = " << cert->triple().y() << ", z = " << cert->triple().z()
             << "\n";
  } else {
    io.human << "no certificate found for " << inst.a() << "/" << inst.n() << "\n";
  }
  io.finish([&](Format f) {
    std::vector<TableRow> rows;
    if (cert) rows.push_back(render_row(inst, *cert, 4));
    return emit(rows, f);
  });
  return cert ? kOk : kNotFound;
}

int cmd_scan_coverage(const Options& o, std::ostream& out) {
  Natural a = parse_numerator(o);
  Natural lo = parse_denominator(o.from, "--from");
  Natural hi = parse_denominator(o.to, "--to");
  if (hi < lo) throw UsageError("--to must be >= --from");
  CoverageReport rep = coverage_scan(a, lo, hi, scan_config(o, ScanConfig::paper_coverage()), run_options(o));

  Output io{out, o, {}};
  if (a < Natural(4)) io.human << "note: a < 4 is outside the conjecture regime\n";
  io.human << "coverage a=" << a << " n in [" << lo << ", " << hi << "]: " << rep.captured.size() << "/"
           << rep.total() << " captured (" << percent_text(rep.percent) << ")\n"
           << "recalcitrant: [" << join(rep.recalcitrant) << "]\n";
  io.finish([&](Format f) { return emit(rows_of(rep.captured), f); });
  return kOk;
}

int cmd_scan_mordell(const Options& o, std::ostream& out) {
  Natural lo = parse_denominator(o.from, "--from");
  Natural hi = parse_denominator(o.to, "--to");
  if (hi < lo) throw UsageError("--to must be >= --from");
  MordellReport rep = mordell_scan(lo, hi, scan_config(o, ScanConfig::paper_tables()), run_options(o));

  std::vector<Natural> missing;
  for (const auto& n : rep.exceptional) {
    bool found = std::any_of(rep.verified.begin(), rep.verified.end(),
                             [&](const Certificate& c) { return c.instance().n() == n; });
    if (!found) missing.push_back(n);
  }
  Output io{out, o, {}};
  io.human << "Mordell exceptional cases in [" << lo << ", " << hi << "]: " << join(rep.exceptional) << "\n"
           << "total exceptional cases: " << rep.exceptional.size() << "\n";
  for (const auto& c : rep.verified) io.human << "  " << c.describe() << "\n";
  io.human << "verified: " << rep.verified.size() << " (" << percent_text(rep.percent) << ")\n"
           << "unverified: [" << join(missing) << "]\n";
  io.finish([&](Format f) { return emit(rows_of(rep.verified), f); });
  return kOk;
}

std::string emit_squares(const std::vector<SquareHit>& hits, Format f) {
  std::ostringstream os;
  switch (f) {
    case Format::Csv:
      os << "t,value,root\n";
      for (const auto& h : hits) os << h.t << ',' << h.value << ',' << h.root << '\n';
      break;
    case Format::Json: {
      auto arr = nlohmann::json::array();
      for (const auto& h : hits) arr.push_back({{"t", h.t.str()}, {"value", h.value.str()}, {"root", h.root.str()}});
      os << arr.dump(2) << '\n';
      break;
    }
    case Format::Markdown:
      os << "| t | value | root |\n|---|---|---|\n";
      for (const auto& h : hits) os << "| " << h.t << " | " << h.value << " | " << h.root << " |\n";
      break;
  }
  return os.str();
}

int cmd_square_scan(const Options& o, std::ostream& out) {
  Instance inst(parse_numerator(o), parse_denominator(o.n, "-n"));
  Natural x = require_natural(o.x, "-x");
  Natural t_lo = require_natural(o.t_from, "--t-from");
  Natural t_hi = require_natural(o.t_to, "--t-to");
  if (t_hi < t_lo) throw UsageError("--t-to must be >= --t-from");
  if (inst.offset(x) < 1) throw UsageError("-x must satisfy a*x > n");
  auto hits = square_scan_fixed_x(inst, x, t_lo, t_hi);

  Output io{out, o, {}};
  for (const auto& h : hits) io.human << "t = " << h.t << ", delta = " << h.value << ", sqrt = " << h.root << "\n";
  if (hits.empty()) io.human << "no t in [" << t_lo << ", " << t_hi << "] gives a perfect square\n";
  io.finish([&](Format f) { return emit_squares(hits, f); });
  return hits.empty() ? kNotFound : kOk;
}

int cmd_tables(const Options& o, std::ostream& out) {
  ScanConfig cfg = scan_config(o, ScanConfig::paper_tables());
  std::vector<std::string> ids = o.tables.empty() ? fixture_ids() : o.tables;
  std::vector<TableRow> rows;
  bool all_ok = true;
  Output io{out, o, {}};
  for (const auto& id : ids) {
    FixtureTable table = [&] {
      try {
        return load_fixture(id);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }();
    RegressionResult res = regress_fixture(table, cfg, o.jobs);
    io.human << id << " (" << table.source << ", a=" << table.a << "): " << res.matched << "/" << table.rows.size()
             << " rows matched\n";
    for (const auto& m : res.mismatched) {
      io.human << "  mismatch n=" << m.expected.n << ": expected x=" << m.expected.x << " {" << m.expected.y << ", "
               << m.expected.z << "}";
      if (m.expected.t) io.human << " t=" << *m.expected.t;
      io.human << ", got " << (m.actual ? m.actual->describe() : std::string("nothing")) << "\n";
    }
    all_ok = all_ok && res.ok();
    for (const auto& r : table.rows) {
      rows.push_back(render_triple(Instance(table.a, r.n), Triple(r.x, r.y, r.z), r.t, 4));
    }
  }
  io.finish([&](Format f) { return emit(rows, f); });
  return all_ok ? kOk : kNotFound;
}

void add_numerator(CLI::App* cmd, Options& o) { cmd->add_option("-a", o.a, "numerator a (default 4)"); }

void add_scan_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--preset", o.preset, "paper-tables (x < 10n) or paper-coverage (x < 100n)");
  cmd->add_option("--x-factor", o.x_factor, "scan x below factor * n");
  cmd->add_option("--t-window", o.t_window, "t values tried above t_min");
}

void add_report_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "csv, json or markdown");
  cmd->add_option("--out", o.out, "write the report to this file");
}

void add_run_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--jobs", o.jobs, "worker threads (default: all cores)");
  cmd->add_option("--checkpoint", o.checkpoint, "resumable per-n progress file");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Egyptian fraction certificates for a/n = 1/x + 1/y + 1/z", "unitfrac"};
  app.require_subcommand(1, 1);
  Options o;

  auto* decompose = app.add_subcommand("decompose", "find a certificate for a/n");
  add_numerator(decompose, o);
  decompose->add_option("-n", o.n, "denominator n")->required();
  decompose->add_option("-x", o.x, "evaluate at this x instead of scanning");
  decompose->add_option("-t", o.t, "parameter t (with -x)");
  decompose->add_option("--route", o.route, "trivial, formula-one, formula-two or vieta");
  add_scan_options(decompose, o);
  add_report_options(decompose, o);

  auto* verify = app.add_subcommand("verify", "check 1/x + 1/y + 1/z = a/n exactly");
  add_numerator(verify, o);
  verify->add_option("-n", o.n, "denominator n")->required();
  verify->add_option("-x", o.x)->required();
  verify->add_option("-y", o.y)->required();
  verify->add_option("-z", o.z)->required();
  add_report_options(verify, o);

  auto* coverage = app.add_subcommand("scan-coverage", "formula-two capture rate over an n interval");
  add_numerator(coverage, o);
  coverage->add_option("--from", o.from)->required();
  coverage->add_option("--to", o.to)->required();
  add_scan_options(coverage, o);
  add_report_options(coverage, o);
  add_run_options(coverage, o);

  auto* mordell = app.add_subcommand("scan-mordell", "formula-two on Mordell's exceptional residues (a = 4)");
  mordell->add_option("--from", o.from)->required();
  mordell->add_option("--to", o.to)->required();
  add_scan_options(mordell, o);
  add_report_options(mordell, o);
  add_run_options(mordell, o);

  auto* square = app.add_subcommand("square-scan", "perfect squares of q_poly at fixed x over a t range");
  add_numerator(square, o);
  square->add_option("-n", o.n)->required();
  square->add_option("-x", o.x)->required();
  square->add_option("--t-from", o.t_from)->required();
  square->add_option("--t-to", o.t_to)->required();
  add_report_options(square, o);

  auto* tables = app.add_subcommand("tables", "rerun the shipped table fixtures and compare");
  tables->add_option("--table", o.tables, "fixture id (repeatable; default all)");
  add_scan_options(tables, o);
  add_report_options(tables, o);
  tables->add_option("--jobs", o.jobs, "worker threads (default: all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (decompose->parsed()) return cmd_decompose(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (coverage->parsed()) return cmd_scan_coverage(o, out);
    if (mordell->parsed()) return cmd_scan_mordell(o, out);
    if (square->parsed()) return cmd_square_scan(o, out);
    if (tables->parsed()) return cmd_tables(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNotFound;
  }
  return kUsage;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace unitfrac::cli

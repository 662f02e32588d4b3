#include "unitfrac/reporting.hpp"

#include "fixtures_embedded.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace unitfrac {

std::optional<Format> parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  if (text == "markdown" || text == "md") return Format::Markdown;
  return std::nullopt;
}

std::string round_half_up(const Rational& v, unsigned places) {
  Integer scale = 1;
  for (unsigned i = 0; i < places; ++i) scale *= 10;
  const bool negative = v.numerator().sign() < 0;
  const Integer num = negative ? Integer(-v.numerator()) : v.numerator();
  const Integer& den = v.denominator();
  const Integer scaled = (2 * num * scale + den) / (2 * den);

  std::string digits = scaled.str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = negative && scaled != 0 ? "-" : "";
  out += digits.substr(0, digits.size() - places);
  if (places > 0) {
    out += '.';
    out += digits.substr(digits.size() - places);
  }
  return out;
}

TableRow render_triple(const Instance& inst, const Triple& triple, std::optional<Natural> t, unsigned places) {
  if (places < 1) throw std::invalid_argument("render_row: places must be >= 1");
  Verdict v = verify_decomposition(inst, triple);
  return TableRow{inst.n(),        triple.x(), triple.y(), triple.z(), std::move(t),
                  round_half_up(v.lhs, places), round_half_up(v.rhs, places), v.holds};
}

TableRow render_row(const Instance& inst, const Certificate& cert, unsigned places) {
  return render_triple(inst, cert.triple(), cert.witness_t(), places);
}

namespace {

constexpr std::string_view kCsvHeader = "n,x,y,z,t,L,R,holds";

nlohmann::json json_integer(const Natural& v) {
  if (auto small = v.to_u64()) return *small;
  return v.str();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    f(trim(text.substr(start, end - start)));
    start = end + 1;
  }
}

}  // namespace

std::string emit(const std::vector<TableRow>& rows, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Csv:
      os << kCsvHeader << '\n';
      for (const auto& r : rows) {
        os << r.n << ',' << r.x << ',' << r.y << ',' << r.z << ',';
        if (r.t) os << *r.t;
        os << ',' << r.l_display << ',' << r.r_display << ',' << (r.holds ? "true" : "false") << '\n';
      }
      break;
    case Format::Json: {
      auto arr = nlohmann::json::array();
      for (const auto& r : rows) {
        arr.push_back({{"n", json_integer(r.n)},
                       {"x", json_integer(r.x)},
                       {"y", json_integer(r.y)},
                       {"z", json_integer(r.z)},
                       {"t", r.t ? json_integer(*r.t) : nlohmann::json(nullptr)},
                       {"L", r.l_display},
                       {"R", r.r_display},
                       {"holds", r.holds}});
      }
      os << arr.dump(2) << '\n';
      break;
    }
    case Format::Markdown:
      os << "| n | x | y | z | t | L | R | holds |\n";
      os << "|---|---|---|---|---|---|---|---|\n";
      for (const auto& r : rows) {
        os << "| " << r.n << " | " << r.x << " | " << r.y << " | " << r.z << " | ";
        if (r.t) os << *r.t;
        os << " | " << r.l_display << " | " << r.r_display << " | " << (r.holds ? "true" : "false") << " |\n";
      }
      break;
  }
  return os.str();
}

std::vector<TableRow> parse_csv(std::string_view text) {
  std::vector<TableRow> rows;
  bool header_seen = false;
  for_each_line(text, [&](std::string_view line) {
    if (line.empty() || line.front() == '#') return;
    if (!header_seen) {
      if (line != kCsvHeader) throw std::runtime_error("csv: expected header '" + std::string(kCsvHeader) + "'");
      header_seen = true;
      return;
    }
    auto f = split(line, ',');
    if (f.size() != 8) throw std::runtime_error("csv: expected 8 fields in '" + std::string(line) + "'");
    TableRow r;
    r.n = Natural::parse(f[0]);
    r.x = Natural::parse(f[1]);
    r.y = Natural::parse(f[2]);
    r.z = Natural::parse(f[3]);
    if (!f[4].empty()) r.t = Natural::parse(f[4]);
    r.l_display = std::string(f[5]);
    r.r_display = std::string(f[6]);
    if (f[7] == "true") {
      r.holds = true;
    } else if (f[7] != "false") {
      throw std::runtime_error("csv: holds must be true or false, got '" + std::string(f[7]) + "'");
    }
    rows.push_back(std::move(r));
  });
  if (!header_seen) throw std::runtime_error("csv: missing header");
  return rows;
}

FixtureTable parse_fixture(std::string_view text) {
  FixtureTable table{"", "", Natural(0), FormulaKind::Two, {}};
  bool have_a = false;
  bool have_formula = false;
  for_each_line(text, [&](std::string_view line) {
    if (line.empty() || line.front() != '#') return;
    line = trim(line.substr(1));
    auto colon = line.find(':');
    if (colon == std::string_view::npos) return;
    auto key = trim(line.substr(0, colon));
    auto value = trim(line.substr(colon + 1));
    if (key == "id") {
      table.id = std::string(value);
    } else if (key == "source") {
      table.source = std::string(value);
    } else if (key == "a") {
      table.a = Natural::parse(value);
      have_a = true;
    } else if (key == "formula") {
      if (value == "one") {
        table.formula = FormulaKind::One;
      } else if (value == "two") {
        table.formula = FormulaKind::Two;
      } else {
        throw std::runtime_error("fixture: unknown formula '" + std::string(value) + "'");
      }
      have_formula = true;
    }
  });
  if (table.id.empty() || table.source.empty() || !have_a || !have_formula) {
    throw std::runtime_error("fixture: missing id/source/a/formula header lines");
  }
  table.rows = parse_csv(text);
  return table;
}

std::vector<std::string> fixture_ids() {
  std::vector<std::string> ids;
  for (std::string_view text : detail::embedded_fixtures()) ids.push_back(parse_fixture(text).id);
  // T1..T10 first, then the Mordell listings, each by number.
  auto key = [](const std::string& id) { return std::make_pair(id[0] != 'T', std::stoul(id.substr(1))); };
  std::sort(ids.begin(), ids.end(), [&](const auto& l, const auto& r) { return key(l) < key(r); });
  return ids;
}

FixtureTable load_fixture(std::string_view id) {
  for (std::string_view text : detail::embedded_fixtures()) {
    FixtureTable t = parse_fixture(text);
    if (t.id == id) return t;
  }
  throw std::invalid_argument("unknown fixture id '" + std::string(id) + "'");
}

namespace {

bool row_matches(const TableRow& row, const Certificate& cert) {
  if (!(cert.triple() == Triple(row.x, row.y, row.z))) return false;
  if (row.t && !(cert.witness_t() && *cert.witness_t() == *row.t)) return false;
  return true;
}

}  // namespace

RegressionResult regress_fixture(const FixtureTable& table, const ScanConfig& cfg, unsigned jobs) {
  cfg.validate();
  const std::size_t count = table.rows.size();
  std::vector<std::optional<Certificate>> found(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      Instance inst(table.a, table.rows[i].n);
      found[i] = table.formula == FormulaKind::One ? formula_one_scan(inst, cfg) : formula_two_scan(inst, cfg);
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < std::min<std::size_t>(jobs, count); ++j) pool.emplace_back(work);
    work();
  }

  RegressionResult result{table.id, 0, {}};
  for (std::size_t i = 0; i < count; ++i) {
    if (found[i] && row_matches(table.rows[i], *found[i])) {
      ++result.matched;
    } else {
      result.mismatched.push_back({table.rows[i], std::move(found[i])});
    }
  }
  return result;
}

RegressionResult regress_fixture(std::string_view id, const ScanConfig& cfg, unsigned jobs) {
  return regress_fixture(load_fixture(id), cfg, jobs);
}

}  // namespace unitfrac

#pragma once

// Table rows, text exports, and regression against the shipped fixtures.

#include "unitfrac/scanner.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace unitfrac {

struct TableRow {
  Natural n;
  Natural x;
  Natural y;
  Natural z;
  std::optional<Natural> t;
  std::string l_display;
  std::string r_display;
  bool holds = false;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

enum class Format { Csv, Json, Markdown };

std::optional<Format> parse_format(std::string_view text);

enum class FormulaKind { One, Two };

struct FixtureTable {
  std::string id;      // "T1".."T10", "M2000", "M5000", "M10000"
  std::string source;  // provenance line from the data file
  Natural a;
  FormulaKind formula;
  std::vector<TableRow> rows;
};

struct Mismatch {
  TableRow expected;
  std::optional<Certificate> actual;
};

struct RegressionResult {
  std::string id;
  std::size_t matched = 0;
  std::vector<Mismatch> mismatched;

  bool ok() const { return mismatched.empty(); }
};

/// Fixed-point rendering with round-half-up at `places` decimals.
std::string round_half_up(const Rational& v, unsigned places);

/// Display row for a certificate; holds is decided on exact values.
TableRow render_row(const Instance& inst, const Certificate& cert, unsigned places);
TableRow render_triple(const Instance& inst, const Triple& triple, std::optional<Natural> t, unsigned places);

/// csv: header `n,x,y,z,t,L,R,holds`; json: array of flat objects;
/// markdown: pipe table. `t` is empty when absent.
std::string emit(const std::vector<TableRow>& rows, Format format);

/// Inverse of emit(rows, Format::Csv). Lines starting with '#' are skipped.
std::vector<TableRow> parse_csv(std::string_view text);

/// Ids of every compiled-in fixture: T1..T10, then M2000, M5000, M10000.
std::vector<std::string> fixture_ids();

/// Throws std::invalid_argument for an unknown id.
FixtureTable load_fixture(std::string_view id);

/// Parses a fixture file body: `# id:`, `# source:`, `# a:` and
/// `# formula:` comment lines followed by CSV in the emit() schema.
FixtureTable parse_fixture(std::string_view text);

/// Reruns the scan that produced each row and compares x, {y, z}, and t
/// when the row carries one.
RegressionResult regress_fixture(std::string_view id, const ScanConfig& cfg, unsigned jobs = 0);
RegressionResult regress_fixture(const FixtureTable& table, const ScanConfig& cfg, unsigned jobs = 0);

}  // namespace unitfrac

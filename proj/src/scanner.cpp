#include "unitfrac/scanner.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <deque>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace unitfrac {

void ScanConfig::validate() const {
  if (x_ceiling_factor < 1) throw std::invalid_argument("x ceiling factor must be >= 1");
  if (t_window < 1) throw std::invalid_argument("t window must be >= 1");
}

bool mordell_is_exception(const Natural& n) {
  auto r = (n % Natural(840)).as_u64();
  return r == 1 || r == 121 || r == 169 || r == 289 || r == 361 || r == 529;
}

namespace {

// Machine-word view of a scan; present when every intermediate of the
// outer loop fits comfortably in 128 bits.
struct FastBounds {
  std::uint64_t a;
  std::uint64_t n;
  std::uint64_t x_begin;
  std::uint64_t x_end;  // exclusive
};

Natural x_begin_of(const Instance& inst) { return inst.n() / inst.a() + Natural(1); }
Natural x_end_of(const Instance& inst, const ScanConfig& cfg) { return inst.n() * Natural(cfg.x_ceiling_factor); }

std::optional<FastBounds> fast_bounds(const Instance& inst, const ScanConfig& cfg) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  auto a = inst.a().to_u64();
  auto n = inst.n().to_u64();
  auto end = x_end_of(inst, cfg).to_u64();
  if (!a || !n || !end || *a >= kLimit || *n >= kLimit || *end >= kLimit) return std::nullopt;
  if (static_cast<u128>(*a) * *end >= kLimit) return std::nullopt;
  return FastBounds{*a, *n, *n / *a + 1, *end};
}

std::optional<Certificate> formula_one_fast(const Instance& inst, const FastBounds& b) {
  for (std::uint64_t x = b.x_begin; x < b.x_end; ++x) {
    const u128 ax = static_cast<u128>(b.a) * x;
    if (ax < static_cast<u128>(b.n) + 2) continue;
    const u128 d = ax - b.n;
    const u128 two_nx = static_cast<u128>(2) * b.n * x;
    if (two_nx % (d - 1) == 0 && two_nx % (d + 1) == 0) return formula_one_at(inst, Natural(x));
  }
  return std::nullopt;
}

std::optional<Certificate> formula_one_big(const Instance& inst, const ScanConfig& cfg) {
  const Natural end = x_end_of(inst, cfg);
  for (Natural x = x_begin_of(inst); x < end; x = x + Natural(1)) {
    if (auto c = formula_one_at(inst, x)) return c;
  }
  return std::nullopt;
}

enum class Probe { Negative, NotSquare, Square, Overflow };

// Classifies t * (t D^2 - 2nx) = q_poly without leaving 128-bit arithmetic.
Probe probe_q_poly(u128 d2, u128 two_nx, u128 t) {
  u128 td2;
  if (__builtin_mul_overflow(t, d2, &td2)) return Probe::Overflow;
  if (td2 < two_nx) return Probe::Negative;
  u128 value;
  if (__builtin_mul_overflow(t, td2 - two_nx, &value)) return Probe::Overflow;
  return perfect_square_root_u128(value) ? Probe::Square : Probe::NotSquare;
}

Natural t_min_of(const Instance& inst, const Natural& x) {
  const Integer d = inst.offset(x);
  Integer t = 2 * inst.n().value() * x.value() / (d * d);
  return t < 1 ? Natural(1) : Natural(std::move(t));
}

void formula_two_fast(const Instance& inst, const ScanConfig& cfg, const FastBounds& b,
                      std::vector<Certificate>& out) {
  for (std::uint64_t x = b.x_begin; x < b.x_end; ++x) {
    const u128 d = static_cast<u128>(b.a) * x - b.n;
    const u128 d2 = d * d;
    const u128 two_nx = static_cast<u128>(2) * b.n * x;
    const u128 t_min = std::max<u128>(1, two_nx / d2);
    for (u128 t = t_min; t < t_min + cfg.t_window; ++t) {
      Probe p = probe_q_poly(d2, two_nx, t);
      if (p == Probe::Negative || p == Probe::NotSquare) continue;
      auto cert = formula_two_at(inst, Natural(x), Natural(to_integer(t)));
      if (!cert) continue;  // overflow probe that turned out not to be a square
      out.push_back(std::move(*cert));
      if (cfg.stop_at_first) return;
      break;
    }
  }
}

void formula_two_big(const Instance& inst, const ScanConfig& cfg, std::vector<Certificate>& out) {
  const Natural end = x_end_of(inst, cfg);
  const Natural window(cfg.t_window);
  for (Natural x = x_begin_of(inst); x < end; x = x + Natural(1)) {
    const Natural t_min = t_min_of(inst, x);
    const Natural t_end = t_min + window;
    for (Natural t = t_min; t < t_end; t = t + Natural(1)) {
      if (auto cert = formula_two_at(inst, x, t)) {
        out.push_back(std::move(*cert));
        if (cfg.stop_at_first) return;
        break;
      }
    }
  }
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs > 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs work(n) for every n, partitioned across threads by n. Completed n
// found in the checkpoint are not recomputed; new results are appended by
// the calling thread only. Output order follows `ns`.
template <class Work>
std::vector<std::optional<Certificate>> run_sharded(const std::vector<Natural>& ns, Work work,
                                                    const RunOptions& run, CheckpointLog* log) {
  std::vector<std::optional<Certificate>> results(ns.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (log) {
      auto it = log->completed().find(ns[i]);
      if (it != log->completed().end()) {
        results[i] = it->second.cert;
        continue;
      }
    }
    pending.push_back(i);
  }
  if (pending.empty()) return results;

  const unsigned jobs = std::min<std::size_t>(resolve_jobs(run.jobs), pending.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::size_t> finished;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      std::size_t k = next.fetch_add(1);
      if (k >= pending.size()) return;
      std::size_t i = pending[k];
      try {
        results[i] = work(ns[i]);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        failed = true;
        cv.notify_all();
        return;
      }
      std::lock_guard lock(mu);
      finished.push_back(i);
      cv.notify_all();
    }
  };

  std::vector<std::jthread> threads;
  threads.reserve(jobs);
  for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);

  std::size_t written = 0;
  while (written < pending.size()) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return !finished.empty() || failed.load(); });
    if (failed.load()) break;
    std::deque<std::size_t> batch;
    batch.swap(finished);
    lock.unlock();
    for (std::size_t i : batch) {
      if (log) log->append({ns[i], results[i]});
      ++written;
    }
  }
  threads.clear();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace

std::optional<Certificate> formula_one_scan(const Instance& inst, const ScanConfig& cfg) {
  cfg.validate();
  if (auto b = fast_bounds(inst, cfg)) return formula_one_fast(inst, *b);
  return formula_one_big(inst, cfg);
}

std::vector<Certificate> formula_two_search(const Instance& inst, const ScanConfig& cfg) {
  cfg.validate();
  std::vector<Certificate> out;
  if (auto b = fast_bounds(inst, cfg)) {
    formula_two_fast(inst, cfg, *b, out);
  } else {
    formula_two_big(inst, cfg, out);
  }
  return out;
}

std::optional<Certificate> formula_two_scan(const Instance& inst, const ScanConfig& cfg) {
  ScanConfig first = cfg;
  first.stop_at_first = true;
  auto hits = formula_two_search(inst, first);
  if (hits.empty()) return std::nullopt;
  return std::move(hits.front());
}

CoverageReport coverage_scan(const Natural& a, const Natural& n_lo, const Natural& n_hi,
                             const ScanConfig& cfg, const RunOptions& run) {
  cfg.validate();
  if (n_lo < Natural(2) || n_hi < n_lo) throw std::invalid_argument("coverage_scan needs 2 <= n_lo <= n_hi");
  Instance{a, n_lo};  // validates a
  std::vector<Natural> ns;
  for (Natural n = n_lo; n <= n_hi; n = n + Natural(1)) ns.push_back(n);

  std::optional<CheckpointLog> log;
  if (run.checkpoint) log.emplace(*run.checkpoint, a, cfg);
  auto results = run_sharded(
      ns, [&](const Natural& n) { return formula_two_scan(Instance(a, n), cfg); }, run,
      log ? &*log : nullptr);

  CoverageReport rep{a, n_lo, n_hi, {}, {}, {}};
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (results[i]) {
      rep.captured.push_back(std::move(*results[i]));
    } else {
      rep.recalcitrant.push_back(ns[i]);
    }
  }
  rep.percent = Rational(Integer(rep.captured.size()), Integer(ns.size()));
  return rep;
}

MordellReport mordell_scan(const Natural& n_lo, const Natural& n_hi, const ScanConfig& cfg,
                           const RunOptions& run) {
  cfg.validate();
  if (n_lo < Natural(2) || n_hi < n_lo) throw std::invalid_argument("mordell_scan needs 2 <= n_lo <= n_hi");
  const Natural a(4);
  MordellReport rep{n_lo, n_hi, {}, {}, Rational(0)};
  for (Natural n = n_lo; n <= n_hi; n = n + Natural(1)) {
    if (mordell_is_exception(n)) rep.exceptional.push_back(n);
  }

  std::optional<CheckpointLog> log;
  if (run.checkpoint) log.emplace(*run.checkpoint, a, cfg);
  auto results = run_sharded(
      rep.exceptional, [&](const Natural& n) { return formula_two_scan(Instance(a, n), cfg); }, run,
      log ? &*log : nullptr);
  for (auto& r : results) {
    if (r) rep.verified.push_back(std::move(*r));
  }
  if (!rep.exceptional.empty()) {
    rep.percent = Rational(Integer(rep.verified.size()), Integer(rep.exceptional.size()));
  }
  return rep;
}

std::vector<SquareHit> square_scan_fixed_x(const Instance& inst, const Natural& x, const Natural& t_lo,
                                           const Natural& t_hi) {
  if (t_hi < t_lo) throw std::invalid_argument("square_scan_fixed_x needs t_lo <= t_hi");
  if (inst.offset(x) < 1) throw std::invalid_argument("square_scan_fixed_x needs a*x > n");
  std::vector<SquareHit> hits;
  auto exact = [&](const Natural& t) {
    Integer v = q_poly(inst, x, t);
    if (v.sign() < 0) return;
    Natural value(std::move(v));
    if (auto r = perfect_square_root(value)) hits.push_back({t, std::move(value), std::move(*r)});
  };

  const Integer d = inst.offset(x);
  const Integer d2 = d * d;
  const Integer two_nx = 2 * inst.n().value() * x.value();
  auto lo = t_lo.to_u64();
  auto hi = t_hi.to_u64();
  auto fd2 = to_u128(d2);
  auto fnx = to_u128(two_nx);
  if (lo && hi && fd2 && fnx) {
    for (std::uint64_t t = *lo;; ++t) {
      Probe p = probe_q_poly(*fd2, *fnx, t);
      if (p == Probe::Square || p == Probe::Overflow) exact(Natural(t));
      if (t == *hi) break;
    }
    return hits;
  }
  for (Natural t = t_lo; t <= t_hi; t = t + Natural(1)) exact(t);
  return hits;
}

// --- checkpoint ------------------------------------------------------------

namespace {

std::string header_line(const Natural& a, const ScanConfig& cfg) {
  std::ostringstream os;
  os << "# unitfrac checkpoint a=" << a << " x_factor=" << cfg.x_ceiling_factor
     << " t_window=" << cfg.t_window;
  return os.str();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) return fields;
    start = comma + 1;
  }
}

}  // namespace

std::string CheckpointRecord::line() const {
  std::ostringstream os;
  os << n << ',';
  if (!cert) {
    os << "recalcitrant,,,,,";
    return os.str();
  }
  const Triple& tr = cert->triple();
  os << "captured," << tr.x() << ',' << tr.y() << ',' << tr.z() << ',';
  if (cert->witness_t()) os << *cert->witness_t();
  os << ',';
  if (cert->witness_q()) os << *cert->witness_q();
  return os.str();
}

CheckpointRecord CheckpointLog::parse_line(std::string_view line, const Natural& a) {
  auto f = split_fields(line);
  if (f.size() != 7) throw std::runtime_error("checkpoint: expected 7 fields in '" + std::string(line) + "'");
  Natural n = Natural::parse(f[0]);
  if (f[1] == "recalcitrant") return {n, std::nullopt};
  if (f[1] != "captured") throw std::runtime_error("checkpoint: bad status '" + std::string(f[1]) + "'");
  Natural x = Natural::parse(f[2]);
  Natural y = Natural::parse(f[3]);
  Natural z = Natural::parse(f[4]);
  Natural t = Natural::parse(f[5]);
  Natural q = Natural::parse(f[6]);
  auto cert = formula_two_at(Instance(a, n), x, t);
  if (!cert || !(cert->triple() == Triple(x, y, z)) || !(*cert->witness_q() == q)) {
    throw std::runtime_error("checkpoint: record does not verify: '" + std::string(line) + "'");
  }
  return {n, std::move(cert)};
}

CheckpointLog::CheckpointLog(std::filesystem::path path, const Natural& a, const ScanConfig& cfg)
    : path_(std::move(path)) {
  const std::string header = header_line(a, cfg);
  std::string text;
  if (std::filesystem::exists(path_)) {
    std::ifstream in(path_, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  // A crash mid-write leaves an unterminated last line; drop it.
  if (!text.empty() && text.back() != '\n') {
    auto cut = text.rfind('\n');
    text.resize(cut == std::string::npos ? 0 : cut + 1);
    std::filesystem::resize_file(path_, text.size());
  }
  if (text.empty()) {
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    out << header << '\n';
    if (!out) throw std::runtime_error("checkpoint: cannot write " + path_.string());
    return;
  }
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  if (line != header) {
    throw std::runtime_error("checkpoint: " + path_.string() + " belongs to a different scan ('" + line + "')");
  }
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    CheckpointRecord rec = parse_line(line, a);
    Natural key = rec.n;
    done_.insert_or_assign(std::move(key), std::move(rec));
  }
}

void CheckpointLog::append(const CheckpointRecord& rec) {
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  out << rec.line() << '\n';
  out.flush();
  if (!out) throw std::runtime_error("checkpoint: write failed for " + path_.string());
  done_.insert_or_assign(rec.n, rec);
}

}  // namespace unitfrac

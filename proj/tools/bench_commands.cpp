#include "bench_commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <variant>

#include "dimsum/count_min.hpp"
#include "dimsum/dimsum.hpp"
#include "dimsum/exact_math.hpp"
#include "dimsum/exact_oracle.hpp"
#include "dimsum/imsum.hpp"
#include "dimsum/space_saving_heap.hpp"

namespace dimsum::bench {

namespace {

using Engine = std::variant<ImSum, DimSum, SpaceSavingHeap, CountMinSketch, ExactOracle>;
using u128 = unsigned __int128;

double epsilon_of(int log2) { return std::ldexp(1.0, log2); }

Engine make_engine(const AlgoConfig& c) {
  const double eps = epsilon_of(c.epsilon_log2);
  if (c.algo == "imsum") return Engine(std::in_place_type<ImSum>, Params::make(eps, c.gamma));
  if (c.algo == "dimsum") return Engine(std::in_place_type<DimSum>, Params::make(eps, c.gamma));
  if (c.algo == "ssh") return Engine(std::in_place_type<SpaceSavingHeap>, SpaceSavingHeap::for_epsilon(eps));
  if (c.algo == "cm") return Engine(std::in_place_type<CountMinSketch>, eps, c.delta, c.seed);
  return Engine(std::in_place_type<ExactOracle>);
}

void feed(Engine& e, const std::vector<TraceRecord>& records) {
  std::visit(
      [&](auto& s) {
        for (const TraceRecord& r : records) s.update(r.id, r.weight);
      },
      e);
}

void attach(Engine& e, OpCounter* c) {
  std::visit(
      [&](auto& s) {
        if constexpr (requires { s.attach_counter(c); }) s.attach_counter(c);
      },
      e);
}

Volume query(const Engine& e, FlowId id) {
  return std::visit([&](const auto& s) { return s.query(id); }, e);
}

std::uint64_t peak_entries(const Engine& e) {
  return std::visit(
      [](const auto& s) -> std::uint64_t {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ImSum> || std::is_same_v<S, DimSum>) {
          return s.stats().peak_entries;
        } else if constexpr (std::is_same_v<S, SpaceSavingHeap>) {
          return s.size();
        } else if constexpr (std::is_same_v<S, CountMinSketch>) {
          return s.depth() * s.width();
        } else {
          return s.distinct();
        }
      },
      e);
}

std::uint64_t schedule_overruns(const Engine& e) {
  if (const auto* d = std::get_if<DimSum>(&e)) return d->stats().schedule_overruns;
  return 0;
}

/// Reported elephants with their estimates, sorted by id.
std::vector<std::pair<FlowId, Volume>> elephants(const Engine& e, double theta) {
  std::vector<std::pair<FlowId, Volume>> out;
  if (const auto* o = std::get_if<ExactOracle>(&e)) {
    for (const auto& [id, f] : o->counts()) {
      if (compare_threshold(f, o->total_weight(), theta) != std::strong_ordering::less) out.emplace_back(id, f);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  std::visit(
      [&](const auto& s) {
        if constexpr (requires { s.elephants(theta); }) {
          for (FlowId id : s.elephants(theta)) out.emplace_back(id, s.query(id));
        }
      },
      e);
  return out;
}

std::vector<TraceRecord> load(const std::string& path) {
  if (path.empty()) throw UsageError("--trace is required");
  if (!std::filesystem::exists(path)) throw UsageError("trace not found: " + path);
  return read_trace(path);
}

std::string fmt(double x, int precision) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << x;
  return s.str();
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParameterError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const TraceFormatError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ScheduleViolation& e) {
    err << "audit violation: " << e.what() << "\n";
    return kAuditViolation;
  } catch (const CapacityExceeded& e) {
    err << "audit violation: " << e.what() << "\n";
    return kAuditViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names{"imsum", "dimsum", "ssh", "cm", "exact"};
  return names;
}

void validate(const AlgoConfig& c) {
  const auto& names = known_algorithms();
  if (std::find(names.begin(), names.end(), c.algo) == names.end()) throw UsageError("unknown algorithm: " + c.algo);
  if (c.epsilon_log2 > 0 || c.epsilon_log2 < -40) throw UsageError("epsilon exponent must lie in [-40, 0]");
  if (!(c.gamma > 0.0) || !std::isfinite(c.gamma)) throw UsageError("gamma must be positive");
  if (!(c.delta > 0.0) || !(c.delta < 1.0)) throw UsageError("delta must lie in (0, 1)");
  if (c.algo == "cm" && c.epsilon_log2 < -30) throw UsageError("epsilon too small for a Count-Min sketch");
}

std::vector<BenchRow> run_bench(const BenchOptions& o, const std::vector<TraceRecord>& records) {
  if (o.repeats < 1) throw UsageError("--repeats must be positive");
  std::vector<BenchRow> rows;
  for (const std::string& algo : o.algos) {
    for (int e : o.epsilon_log2) {
      const AlgoConfig config{algo, e, o.gamma, o.delta, o.seed};
      validate(config);
      std::vector<double> times;
      for (int r = 0; r < o.repeats; ++r) {
        Engine engine = make_engine(config);
        const auto start = std::chrono::steady_clock::now();
        feed(engine, records);
        const auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
      }
      std::sort(times.begin(), times.end());
      const double wall = times[times.size() / 2];

      // audit pass: counters attached, not timed
      Engine engine = make_engine(config);
      OpCounter counter;
      attach(engine, &counter);
      feed(engine, records);
      if (schedule_overruns(engine) > 0) throw ScheduleViolation("DIM-SUM exceeded its maintenance schedule");

      BenchRow row;
      row.algo = algo;
      row.epsilon_log2 = e;
      row.gamma = o.gamma;
      row.skew = o.skew;
      row.wall_ms = wall;
      row.updates_per_ms = static_cast<double>(records.size()) / std::max(wall, 1e-6);
      row.mean_ops = counter.mean_per_update();
      row.max_ops = counter.per_update_max;
      row.peak_entries = peak_entries(engine);
      rows.push_back(row);
    }
  }
  return rows;
}

std::string format_row(const BenchRow& r) {
  std::ostringstream s;
  s << r.algo << ',' << r.epsilon_log2 << ',' << r.gamma << ',' << r.skew << ',' << fmt(r.updates_per_ms, 3) << ','
    << fmt(r.mean_ops, 4) << ',' << r.max_ops << ',' << r.peak_entries << ',' << fmt(r.wall_ms, 3);
  return s.str();
}

int cmd_gen(const GenOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.out.empty()) throw UsageError("--out is required");
    const auto records = zipf_stream(o.spec);
    write_trace(o.out, records);
    out << "wrote " << records.size() << " records to " << o.out << "\n";
    return kOk;
  });
}

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.algos.empty() || o.epsilon_log2.empty()) throw UsageError("need at least one algorithm and one epsilon");
    for (const auto& a : o.algos) {
      for (int e : o.epsilon_log2) validate(AlgoConfig{a, e, o.gamma, o.delta, o.seed});
    }
    const auto records = load(o.trace);
    const auto rows = run_bench(o, records);
    if (o.output.empty()) {
      out << kBenchHeader << "\n";
      for (const auto& r : rows) out << format_row(r) << "\n";
    } else {
      const bool fresh = !std::filesystem::exists(o.output) || std::filesystem::file_size(o.output) == 0;
      std::ofstream file(o.output, std::ios::app);
      if (!file) throw std::runtime_error("cannot open " + o.output);
      if (fresh) file << kBenchHeader << "\n";
      for (const auto& r : rows) file << format_row(r) << "\n";
      out << "appended " << rows.size() << " rows to " << o.output << "\n";
    }
    return kOk;
  });
}

int cmd_error(const ErrorOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(o.algo);
    const auto records = load(o.trace);
    const int shift = -o.algo.epsilon_log2;
    Engine engine = make_engine(o.algo);
    ExactOracle oracle;
    std::ofstream flows;
    if (!o.output.empty()) {
      flows.open(o.output, std::ios::trunc);
      if (!flows) throw std::runtime_error("cannot open " + o.output);
      flows << "checkpoint,id,frequency,estimate,error\n";
    }
    out << "checkpoint,records,total_weight,bound,queries,max_error,violations,under_estimates\n";
    std::uint64_t queries = 0, violations = 0, under = 0, checkpoint = 0;
    auto audit = [&](std::uint64_t seen) {
      ++checkpoint;
      std::vector<std::pair<FlowId, Volume>> ids(oracle.counts().begin(), oracle.counts().end());
      std::sort(ids.begin(), ids.end());
      const Volume total = oracle.total_weight();
      Volume max_error = 0;
      std::uint64_t v = 0, u = 0;
      for (const auto& [id, f] : ids) {
        const Volume est = query(engine, id);
        if (est < f) {
          ++u;
        } else {
          max_error = std::max(max_error, est - f);
          if ((static_cast<u128>(est - f) << shift) > total) ++v;
        }
        if (flows.is_open()) {
          flows << checkpoint << ',' << id << ',' << f << ',' << est << ',';
          if (est >= f) {
            flows << (est - f);
          } else {
            flows << '-' << (f - est);
          }
          flows << '\n';
        }
      }
      queries += ids.size();
      violations += v;
      under += u;
      out << checkpoint << ',' << seen << ',' << total << ',' << fmt(std::ldexp(static_cast<double>(total), -shift), 3)
          << ',' << ids.size() << ',' << max_error << ',' << v << ',' << u << "\n";
    };
    for (std::size_t i = 0; i < records.size(); ++i) {
      std::visit([&](auto& s) { s.update(records[i].id, records[i].weight); }, engine);
      oracle.update(records[i].id, records[i].weight);
      if (o.checkpoint > 0 && (i + 1) % o.checkpoint == 0 && i + 1 != records.size()) audit(i + 1);
    }
    audit(records.size());

    bool pass = under == 0;
    if (o.algo.algo == "cm") {
      // per-query failures are allowed at rate delta, with a 3-sigma binomial margin
      const double n = static_cast<double>(std::max<std::uint64_t>(queries, 1));
      const double d = o.algo.delta;
      const double limit = d + 3.0 * std::sqrt(d * (1.0 - d) / n);
      const double rate = static_cast<double>(violations) / n;
      pass = pass && rate <= limit;
      err << "cm failure rate " << rate << " (limit " << limit << ")\n";
    } else {
      pass = pass && violations == 0;
    }
    if (schedule_overruns(engine) > 0) pass = false;
    err << (pass ? "audit passed" : "audit FAILED") << ": " << violations << " bound violations, " << under
        << " under-estimates over " << queries << " queries\n";
    return pass ? kOk : kAuditViolation;
  });
}

int cmd_elephants(const ElephantOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(o.algo);
    if (o.algo.algo == "cm") throw UsageError("cm cannot enumerate elephants");
    const double eps = epsilon_of(o.algo.epsilon_log2);
    if (!(o.theta > eps) || !(o.theta <= 1.0)) throw UsageError("theta must lie in (epsilon, 1]");
    const auto records = load(o.trace);
    Engine engine = make_engine(o.algo);
    ExactOracle oracle;
    feed(engine, records);
    for (const TraceRecord& r : records) oracle.update(r.id, r.weight);

    const auto reported = elephants(engine, o.theta);
    const Volume total = oracle.total_weight();
    const int shift = -o.algo.epsilon_log2;
    std::uint64_t missing = 0, spurious = 0, truth = 0;
    for (const auto& [id, f] : oracle.counts()) {
      if (compare_threshold(f, total, o.theta) != std::strong_ordering::greater) continue;
      ++truth;
      const auto it = std::lower_bound(reported.begin(), reported.end(), std::pair<FlowId, Volume>{id, 0});
      if (it == reported.end() || it->first != id) ++missing;
    }
    const double thr = static_cast<double>(total) * o.theta;
    for (const auto& [id, est] : reported) {
      const u128 lhs = (static_cast<u128>(oracle.frequency(id)) << shift) + total;
      if (static_cast<long double>(lhs) < std::ldexp(static_cast<long double>(thr), shift)) ++spurious;
    }
    out << "# algo=" << o.algo.algo << " epsilon_log2=" << o.algo.epsilon_log2 << " theta=" << o.theta
        << " total_weight=" << total << " reported=" << reported.size() << " oracle=" << truth
        << " missing=" << missing << " spurious=" << spurious << "\n";
    out << "id,estimate,frequency\n";
    for (const auto& [id, est] : reported) out << id << ',' << est << ',' << oracle.frequency(id) << "\n";
    const bool pass = missing == 0 && spurious == 0;
    err << (pass ? "audit passed" : "audit FAILED") << "\n";
    return pass ? kOk : kAuditViolation;
  });
}

}  // namespace dimsum::bench

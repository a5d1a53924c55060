#include "mlas/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

#include "mlas/builders.hpp"
#include "mlas/errors.hpp"
#include "mlas/exact.hpp"

namespace mlas {

namespace {

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_time(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("bad " + what + " value '" + s + "'");
  }
}

long parse_long(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("bad " + what + " value '" + s + "'");
  }
}

// "key=value" pieces inside instance/generate lines.
bool take_kv(const std::string& tok, std::string& key, std::string& value) {
  const auto eq = tok.find('=');
  if (eq == std::string::npos) return false;
  key = tok.substr(0, eq);
  value = tok.substr(eq + 1);
  return true;
}

const char* const kDotPalette[] = {
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628",
    "#f781bf", "#1b9e77", "#d95f02", "#7570b3", "#66a61e", "#e7298a",
};

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::H1: return "H1";
    case Algorithm::H2: return "H2";
    case Algorithm::H3: return "H3";
    case Algorithm::GLS1: return "GLS1";
    case Algorithm::GLS2: return "GLS2";
    case Algorithm::VNS: return "VNS";
    case Algorithm::EXACT: return "EXACT";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "H1") return Algorithm::H1;
  if (s == "H2") return Algorithm::H2;
  if (s == "H3") return Algorithm::H3;
  if (s == "GLS1") return Algorithm::GLS1;
  if (s == "GLS2") return Algorithm::GLS2;
  if (s == "VNS") return Algorithm::VNS;
  if (s == "EXACT") return Algorithm::EXACT;
  throw FormatError("unknown algorithm '" + s + "'");
}

std::shared_ptr<const Instance> generate_instance(int n, double d, std::uint64_t seed,
                                                  int max_tries) {
  if (n < 2) throw DomainError("generate_instance: n must be at least 2");
  if (!(d > 0.0)) throw DomainError("generate_instance: d must be positive");
  Rng rng(seed);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    PointSet ps;
    ps.points.reserve(static_cast<std::size_t>(n));
    while (static_cast<int>(ps.points.size()) < n) {
      Point p{rng.uniform01(), rng.uniform01()};
      const bool dup = std::any_of(ps.points.begin(), ps.points.end(), [&](const Point& q) {
        return q.x == p.x && q.y == p.y;
      });
      if (!dup) ps.points.push_back(p);
    }
    std::ostringstream id;
    id << "gen_n" << n << "_s" << seed;
    ps.source_id = id.str();
    try {
      return make_instance(std::move(ps), d);
    } catch (const ConnectivityError&) {
      // resample
    }
  }
  std::ostringstream os;
  os << "no connected instance with n=" << n << " after " << max_tries
     << " tries; increase d (d=" << d << ")";
  throw ConnectivityError(os.str());
}

std::string instance_id_for(const Instance& inst) {
  std::ostringstream os;
  os << inst.point_set().source_id << "_n" << inst.size() << "_d" << fmt_g(inst.critical_distance());
  return os.str();
}

std::string export_dot(const AggTree& t, const FullSchedule& s) {
  const auto violations = validate_schedule(t.instance(), t, s);
  if (!violations.empty())
    throw Error("export_dot: refusing an invalid schedule: " + violations.front().to_string());

  std::ostringstream os;
  os << "digraph aggregation {\n";
  os << "  graph [splines=line];\n";
  os << "  node [shape=circle, fixedsize=true, width=0.3, fontsize=10];\n";
  for (int v = 0; v < t.size(); ++v) {
    const Point& p = t.instance().point(v);
    os << "  " << v << " [pos=\"" << fmt_g(p.x * 10.0) << "," << fmt_g(p.y * 10.0) << "!\"";
    if (v == t.root()) os << ", shape=doublecircle";
    os << "];\n";
  }
  const std::size_t palette = sizeof kDotPalette / sizeof kDotPalette[0];
  for (int v = 0; v < t.size(); ++v) {
    if (v == t.root()) continue;
    const int slot = s.send_slot[v];
    os << "  " << v << " -> " << s.recipient[v] << " [label=\"" << slot << "\", color=\""
       << kDotPalette[static_cast<std::size_t>(slot - 1) % palette] << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

AlgoRun run_algorithm(std::shared_ptr<const Instance> inst, Algorithm algo, std::uint64_t seed,
                      const BenchConfig& knobs, TimeMode times) {
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&](AggTree tree, FullSchedule sched, std::string trace) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const int len = sched.length;
    return AlgoRun{std::move(tree), std::move(sched), len, secs, std::move(trace)};
  };

  switch (algo) {
    case Algorithm::H1: {
      ScheduleResult r = ndr_schedule(mlst(inst));
      return finish(std::move(r.tree), std::move(r.schedule), "");
    }
    case Algorithm::H2: {
      ScheduleResult r = ndr_schedule(round_heuristic(inst));
      return finish(std::move(r.tree), std::move(r.schedule), "");
    }
    case Algorithm::H3: {
      ScheduleResult r = ndr_schedule(spt(inst));
      return finish(std::move(r.tree), std::move(r.schedule), "");
    }
    case Algorithm::GLS1:
    case Algorithm::GLS2: {
      GlsParams p = knobs.gls;
      p.seed = seed;
      const auto ls = algo == Algorithm::GLS1 ? LocalSearchKind::arc_inversion
                                              : LocalSearchKind::branch_reattaching;
      GlsResult r = run_gls(inst, p, ls);
      std::ostringstream trace;
      trace << "generation,best_L,mean_L,elapsed_ms\n";
      for (const auto& row : r.trace) {
        trace << row.generation << "," << row.best_length << "," << fmt_g(row.mean_length) << ","
              << (times == TimeMode::zero ? 0 : row.elapsed_ms) << "\n";
      }
      return finish(std::move(r.tree), std::move(r.schedule), trace.str());
    }
    case Algorithm::VNS: {
      VnsParams p = knobs.vns;
      p.seed = seed;
      VnsResult r = run_vns(inst, p);
      std::ostringstream trace;
      trace << "outer_iteration,K,current_L,best_L,elapsed_ms\n";
      for (const auto& row : r.trace) {
        trace << row.outer_iteration << "," << row.k << "," << row.current_length << ","
              << row.best_length << "," << (times == TimeMode::zero ? 0 : row.elapsed_ms)
              << "\n";
      }
      return finish(std::move(r.tree), std::move(r.schedule), trace.str());
    }
    case Algorithm::EXACT: {
      ExactResult r = exact_min_latency(inst, knobs.exact_limit);
      return finish(std::move(r.tree), std::move(r.schedule), "");
    }
  }
  throw Error("unreachable algorithm");
}

BenchConfig parse_bench_config(std::istream& in) {
  BenchConfig cfg;
  cfg.algorithms.clear();
  std::string line;
  int nr = 0;
  while (std::getline(in, line)) {
    ++nr;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(nr, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));

    if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_long(value, "seed"));
    } else if (key == "reps") {
      cfg.reps = static_cast<int>(parse_long(value, "reps"));
    } else if (key == "algorithms") {
      std::istringstream as(value);
      std::string name;
      while (std::getline(as, name, ',')) cfg.algorithms.push_back(algorithm_from_string(trim(name)));
    } else if (key == "times") {
      if (value == "wall") cfg.times = TimeMode::wall;
      else if (value == "zero") cfg.times = TimeMode::zero;
      else throw ParseError(nr, "times must be 'wall' or 'zero'");
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "raw_out") {
      cfg.raw_out = value;
    } else if (key == "exact_limit") {
      cfg.exact_limit = static_cast<int>(parse_long(value, "exact_limit"));
    } else if (key == "instance") {
      InstanceSpec spec;
      const auto toks = split_ws(value);
      if (toks.size() < 2) throw ParseError(nr, "instance needs '<path> <format> [case=K] d=V'");
      spec.path = toks[0];
      if (toks[1] == "orlib") spec.format = PointFormat::orlib;
      else if (toks[1] == "csv") spec.format = PointFormat::csv;
      else throw ParseError(nr, "format must be 'orlib' or 'csv'");
      bool have_d = false;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        std::string k, v;
        if (!take_kv(toks[i], k, v)) throw ParseError(nr, "expected key=value, got '" + toks[i] + "'");
        if (k == "case") spec.case_nr = static_cast<int>(parse_long(v, "case"));
        else if (k == "d") { spec.d = parse_double(v, "d"); have_d = true; }
        else throw ParseError(nr, "unknown instance option '" + k + "'");
      }
      if (!have_d) throw ParseError(nr, "instance line is missing d=V");
      cfg.files.push_back(std::move(spec));
    } else if (key == "generate") {
      GenSpec spec;
      bool have_n = false, have_d = false;
      for (const auto& tok : split_ws(value)) {
        std::string k, v;
        if (!take_kv(tok, k, v)) throw ParseError(nr, "expected key=value, got '" + tok + "'");
        if (k == "n") { spec.n = static_cast<int>(parse_long(v, "n")); have_n = true; }
        else if (k == "d") { spec.d = parse_double(v, "d"); have_d = true; }
        else if (k == "seed") spec.seed = static_cast<std::uint64_t>(parse_long(v, "seed"));
        else throw ParseError(nr, "unknown generate option '" + k + "'");
      }
      if (!have_n || !have_d) throw ParseError(nr, "generate line needs n= and d=");
      cfg.generated.push_back(spec);
    } else if (key == "param") {
      std::string k, v;
      if (!take_kv(value, k, v)) throw ParseError(nr, "param needs key=value");
      if (k == "pop_size") cfg.gls.pop_size = static_cast<int>(parse_long(v, k));
      else if (k == "offsp_size") cfg.gls.offsp_size = static_cast<int>(parse_long(v, k));
      else if (k == "fp_it_count") cfg.gls.fp_it_count = static_cast<int>(parse_long(v, k));
      else if (k == "sp_proportion") cfg.gls.sp_proportion = parse_double(v, k);
      else if (k == "pm") cfg.gls.pm = parse_double(v, k);
      else if (k == "pls") cfg.gls.pls = parse_double(v, k);
      else if (k == "k_max") cfg.gls.k_max = static_cast<int>(parse_long(v, k));
      else if (k == "k_max_vns") cfg.vns.k_max = static_cast<int>(parse_long(v, k));
      else if (k == "stall_limit") {
        cfg.gls.stall_limit = static_cast<int>(parse_long(v, k));
        cfg.vns.stall_limit = cfg.gls.stall_limit;
      } else throw ParseError(nr, "unknown param '" + k + "'");
    } else {
      throw ParseError(nr, "unknown key '" + key + "'");
    }
  }
  if (cfg.algorithms.empty())
    cfg.algorithms = {Algorithm::H1, Algorithm::H2, Algorithm::H3,
                      Algorithm::GLS1, Algorithm::GLS2, Algorithm::VNS};
  return cfg;
}

MatrixResult run_matrix(const BenchConfig& config) {
  std::vector<std::shared_ptr<const Instance>> instances;
  for (const auto& f : config.files) {
    PointSet ps = load_points_file(f.path, f.format, f.case_nr);
    if (f.case_nr > 0) ps.source_id += "_nr" + std::to_string(f.case_nr);
    instances.push_back(make_instance(std::move(ps), f.d));
  }
  for (const auto& g : config.generated)
    instances.push_back(generate_instance(g.n, g.d, g.seed));

  MatrixResult result;
  for (const auto& inst : instances) {
    const std::string id = instance_id_for(*inst);

    std::optional<int> exact_len;
    if (std::find(config.algorithms.begin(), config.algorithms.end(), Algorithm::EXACT) !=
            config.algorithms.end() &&
        inst->size() <= config.exact_limit) {
      exact_len = exact_min_latency(inst, config.exact_limit).length;
    }

    for (Algorithm algo : config.algorithms) {
      if (algo == Algorithm::EXACT && inst->size() > config.exact_limit) continue;
      const bool meta =
          algo == Algorithm::GLS1 || algo == Algorithm::GLS2 || algo == Algorithm::VNS;
      const int runs = meta ? config.reps : 1;

      std::vector<int> lengths;
      double time_sum = 0.0;
      for (int r = 0; r < runs; ++r) {
        const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(r);
        AlgoRun run = run_algorithm(inst, algo, seed, config, config.times);
        const auto violations = validate_schedule(*inst, run.tree, run.schedule);
        if (!violations.empty()) {
          std::ostringstream os;
          os << "matrix aborted: " << to_string(algo) << " on " << id
             << " produced an invalid schedule: " << violations.front().to_string()
             << "\nschedule: " << schedule_json(run.tree, run.schedule);
          throw Error(os.str());
        }
        lengths.push_back(run.length);
        time_sum += run.time_s;
        result.raw.push_back({id, algo, seed, run.length, run.time_s});
      }

      RunReport rep;
      rep.instance_id = id;
      rep.algorithm = algo;
      rep.runs = runs;
      rep.sl_best = *std::min_element(lengths.begin(), lengths.end());
      double sum = 0.0;
      for (int l : lengths) sum += l;
      rep.sl_av = sum / runs;
      double var = 0.0;
      for (int l : lengths) var += (l - rep.sl_av) * (l - rep.sl_av);
      rep.sl_sd = std::sqrt(var / runs);
      rep.time_av_s = time_sum / runs;
      if (exact_len) {
        int hits = 0;
        for (int l : lengths)
          if (l == *exact_len) ++hits;
        rep.opt_pct = 100.0 * hits / runs;
      }
      result.reports.push_back(std::move(rep));
    }
  }
  return result;
}

std::string reports_csv(const std::vector<RunReport>& reports, TimeMode times) {
  std::ostringstream os;
  os << "instance_id,algorithm,runs,sl_best,sl_av,sl_sd,opt_pct,time_av_s\n";
  for (const auto& r : reports) {
    os << r.instance_id << "," << to_string(r.algorithm) << "," << r.runs << "," << r.sl_best
       << "," << fmt_g(r.sl_av) << "," << fmt_g(r.sl_sd) << ","
       << (r.opt_pct ? fmt_g(*r.opt_pct) : "") << ","
       << fmt_time(times == TimeMode::zero ? 0.0 : r.time_av_s) << "\n";
  }
  return os.str();
}

std::string raw_csv(const std::vector<RunRecord>& records, TimeMode times) {
  std::ostringstream os;
  os << "instance_id,algorithm,seed,sl,time_s\n";
  for (const auto& r : records) {
    os << r.instance_id << "," << to_string(r.algorithm) << "," << r.seed << "," << r.sl << ","
       << fmt_time(times == TimeMode::zero ? 0.0 : r.time_s) << "\n";
  }
  return os.str();
}

}  // namespace mlas

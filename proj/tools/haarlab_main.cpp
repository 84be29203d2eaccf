// haarlab command line: partition tables, verification suites, rearrangement
// decomposition dumps, and operator-norm probes over finite dyadic windows.
//
// Exit codes: 0 = checks pass / report emitted, 1 = verification violation,
// 2 = usage error.

#include "haarlab/normest.hpp"
#include "haarlab/operators.hpp"
#include "haarlab/suites.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace haarlab;
using nlohmann::json;

namespace {

struct CommonOpts {
  std::vector<std::int64_t> region{0, 16};
  std::vector<std::int64_t> scales{0, 8};
  std::string format = "csv";
  std::string out;
};

void add_window_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--region", opts.region, "window region endpoints A B (integers)")
      ->expected(2);
  cmd->add_option("--scales", opts.scales, "scale range jmin jmax")->expected(2);
}

void add_io_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opts.out, "output path (default: stdout)");
}

WindowSpec window_of(const CommonOpts& opts) {
  WindowSpec w{opts.region[0], opts.region[1], opts.scales[0], opts.scales[1]};
  if (w.region_lo >= w.region_hi) throw CLI::ValidationError("--region", "needs A < B");
  if (w.jmin > w.jmax) throw CLI::ValidationError("--scales", "needs jmin <= jmax");
  return w;
}

void emit(const CommonOpts& opts, const std::string& text) {
  if (opts.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(opts.out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + opts.out);
  os << text;
}

json rat_json(const Rat& q) {
  return json::array({static_cast<std::int64_t>(q.get_num().get_si()),
                      static_cast<std::int64_t>(q.get_den().get_si())});
}

json step_json(const StepFunction& f) {
  json bps = json::array(), vals = json::array();
  for (const Rat& b : f.breakpoints()) bps.push_back(rat_json(b));
  for (const Rat& v : f.values()) vals.push_back(rat_json(v));
  return json{{"breakpoints", bps}, {"values", vals}};
}

json interval_json(const GridInterval& I) {
  return json{{"grid", I.grid == GridKind::Standard ? "standard" : "shifted"},
              {"scale", I.scale},
              {"index", I.index}};
}

std::optional<PartitionLabel> parse_label(const std::vector<int>& raw) {
  if (raw.empty()) return std::nullopt;
  if (raw.size() < 2 || raw.size() > 3) throw CLI::ValidationError("--label", "needs i delta [eps]");
  PartitionLabel label;
  label.i = raw[0];
  label.delta = raw[1];
  if (label.delta == 1) {
    if (raw.size() != 3) throw CLI::ValidationError("--label", "delta=1 needs eps");
    label.eps = raw[2];
  } else if (raw.size() == 3) {
    throw CLI::ValidationError("--label", "delta=0 takes no eps");
  }
  return label;
}

int run_partition(std::int64_t m, const CommonOpts& opts) {
  const WindowSpec window = window_of(opts);
  std::ostringstream os;
  bool csv = opts.format == "csv";
  if (csv) os << "grid,scale,index,inf,sup,i,delta,eps\n";
  for (const GridInterval& I : window.enumerate()) {
    PartitionLabel label = classify(m, I);
    if (csv) {
      os << "standard," << I.scale << ',' << I.index << ',' << rat_str(I.inf()) << ','
         << rat_str(I.sup()) << ',' << label.i << ',' << label.delta << ','
         << (label.eps ? std::to_string(*label.eps) : "") << '\n';
    } else {
      json j = interval_json(I);
      j["inf"] = rat_str(I.inf());
      j["sup"] = rat_str(I.sup());
      j["i"] = label.i;
      j["delta"] = label.delta;
      if (label.eps) j["eps"] = *label.eps;
      os << j.dump() << '\n';
    }
  }
  emit(opts, os.str());
  return 0;
}

int run_verify(const std::string& suite, const std::vector<std::int64_t>& ms, bool fault_inject,
               const CommonOpts& opts) {
  const WindowSpec window = window_of(opts);
  VerifyOptions vopts;
  vopts.fault_inject = fault_inject;
  VerificationReport report;
  if (suite == "lemma3" || suite == "all") report.append(third_shift_suite(window));
  for (std::int64_t m : ms) {
    if (suite == "lemma4" || suite == "all") report.append(shift_partition_suite(m, window, vopts));
    if (suite == "identity" || suite == "all") report.append(identity_suite(m, window));
    if (suite == "mds" || suite == "all") report.append(mds_suite(m, window));
  }
  emit(opts, opts.format == "csv" ? to_csv(report) : to_json_lines(report));
  if (!report.all_pass()) {
    std::cerr << "verify: " << report.violation_count() << " violation(s)\n";
    return 1;
  }
  return 0;
}

int run_decompose(std::int64_t m, bool reflect_flag, int eps,
                  const std::vector<std::string>& interval, const CommonOpts& opts,
                  bool window_given) {
  if (m <= 0 && !reflect_flag)
    throw CLI::ValidationError("--m", "m must be >= 1 (or pass --reflect for negative m)");
  if (m == 0) throw CLI::ValidationError("--m", "m must be nonzero");

  std::vector<GridInterval> targets;
  if (!interval.empty()) {
    Rat lo = rat_parse(interval[0]);
    Rat hi = rat_parse(interval[1]);
    Rat len = hi - lo;
    if (len <= 0) throw CLI::ValidationError("--interval", "needs LO < HI");
    std::int64_t scale = 0;
    Rat probe = len;
    while (probe < 1) {
      probe *= 2;
      ++scale;
    }
    while (probe > 1) {
      probe /= 2;
      --scale;
    }
    Rat idx = lo / len;
    if (probe != 1 || idx.get_den() != 1)
      throw CLI::ValidationError("--interval", "not a standard dyadic interval");
    targets.push_back(GridInterval{GridKind::Standard, scale, idx.get_num().get_si()});
  } else if (window_given) {
    targets = window_of(opts).enumerate();
  } else {
    throw CLI::ValidationError("decompose", "need --interval or --region/--scales");
  }

  const std::int64_t mm = m < 0 ? -m : m;
  std::ostringstream os;
  bool all_ok = true;
  for (const GridInterval& I : targets) {
    // Negative shifts act through the reflection x -> -x.
    GridInterval J = m < 0 ? reflect(I) : I;
    StepFunction a = a_fn(eps, mm, J);
    StepFunction bI = b_fn(eps, J);
    StepFunction bT = b_fn(eps, tau(mm, J));
    StepFunction U = apply_U(mm, HaarExpansion::unit(J));
    if (m < 0) {
      a = a.reflect();
      bI = bI.reflect();
      bT = bT.reflect();
      U = U.reflect();
    }
    bool ok = StepFunction::sum(std::vector<StepFunction>{a, bI, bT.scale_by(rat(-1))}) == U;
    all_ok = all_ok && ok;
    json rec{{"interval", interval_json(I)}, {"m", m},            {"eps", eps},
             {"U", step_json(U)},            {"a", step_json(a)}, {"b", step_json(bI)},
             {"b_tau", step_json(bT)},       {"identity_ok", ok}};
    os << rec.dump() << '\n';
  }
  emit(opts, os.str());
  return all_ok ? 0 : 1;
}

int run_norm(const std::string& op_name, std::int64_t m, double p, int eps,
             const std::vector<int>& label_raw, const PowerConfig& cfg, const CommonOpts& opts) {
  const WindowSpec window = window_of(opts);
  OpSpec spec{operator_id_from_string(op_name), m, eps};
  std::optional<PartitionLabel> label = parse_label(label_raw);
  NormReport rep =
      p == 2.0 ? norm_l2(spec, window, label) : norm_lp_lower(spec, window, p, label, cfg);
  const double exponent = spec.id == OperatorId::T ? 0.25 : 0.75;
  SweepRow row{rep.op,
               rep.m,
               rep.p,
               rep.label,
               rep.lower_bound,
               std::pow(std::log2(2.0 + static_cast<double>(std::llabs(rep.m))), exponent),
               rep.iterations,
               rep.converged};
  emit(opts, opts.format == "csv" ? sweep_csv({row}) : sweep_json_lines({row}));
  return 0;
}

int run_sweep(const std::string& op_name, const std::vector<std::int64_t>& ms, double p, int eps,
              const std::string& mode_name, std::optional<double> exponent, const PowerConfig& cfg,
              const CommonOpts& opts) {
  const WindowSpec window = window_of(opts);
  RestrictedMode mode = mode_name == "full"        ? RestrictedMode::Full
                        : mode_name == "per_label" ? RestrictedMode::PerLabel
                                                   : RestrictedMode::Both;
  auto rows = sweep(operator_id_from_string(op_name), ms, p, window, mode, cfg, exponent, eps);
  emit(opts, opts.format == "csv" ? sweep_csv(rows) : sweep_json_lines(rows));
  return 0;
}

std::vector<std::int64_t> resolve_ms(std::vector<std::int64_t> ms,
                                     const std::vector<std::int64_t>& m_range,
                                     std::vector<std::int64_t> fallback) {
  if (!m_range.empty()) {
    for (std::int64_t v = m_range[0]; v <= m_range[1]; ++v)
      if (v != 0) ms.push_back(v);
  }
  if (ms.empty()) ms = std::move(fallback);
  for (std::int64_t v : ms)
    if (v == 0) throw CLI::ValidationError("--m", "m must be nonzero");
  return ms;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact one-third-shift dyadic grid toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* cmd_partition = app.add_subcommand("partition", "label every window interval");
  std::int64_t pm = 0;
  cmd_partition->add_option("--m", pm, "shift width (nonzero)")->required();
  add_window_flags(cmd_partition, opts);
  add_io_flags(cmd_partition, opts);

  auto* cmd_verify = app.add_subcommand("verify", "run verification suites; exit 1 on violations");
  std::string suite = "all";
  std::vector<std::int64_t> vms, vm_range;
  bool fault_inject = false;
  cmd_verify->add_option("--suite", suite, "lemma3|lemma4|mds|identity|all")
      ->check(CLI::IsMember({"lemma3", "lemma4", "mds", "identity", "all"}));
  cmd_verify->add_option("--m", vms, "shift widths")->expected(-1);
  cmd_verify->add_option("--m-range", vm_range, "inclusive range LO HI")->expected(2);
  cmd_verify->add_flag("--fault-inject", fault_inject, "negative control: corrupt one label");
  add_window_flags(cmd_verify, opts);
  add_io_flags(cmd_verify, opts);

  auto* cmd_decompose = app.add_subcommand("decompose", "per-interval rearrangement records");
  std::int64_t dm = 1;
  int eps = 0;
  bool reflect_flag = false;
  std::vector<std::string> interval;
  cmd_decompose->add_option("--m", dm, "shift width")->required();
  cmd_decompose->add_option("--eps", eps, "0 or 1")->check(CLI::IsMember({0, 1}));
  cmd_decompose->add_flag("--reflect", reflect_flag, "handle m < 0 through x -> -x");
  cmd_decompose->add_option("--interval", interval, "interval endpoints LO HI (rationals)")
      ->expected(2);
  add_window_flags(cmd_decompose, opts);
  add_io_flags(cmd_decompose, opts);

  auto* cmd_norm = app.add_subcommand("norm", "operator norm probe on one window");
  std::string op_name = "T";
  std::int64_t nm = 1;
  double p = 2.0;
  std::vector<int> label_raw;
  PowerConfig cfg;
  cmd_norm->add_option("--op", op_name, "T|U|S|S0|S1|A|B|Bm")->required();
  cmd_norm->add_option("--m", nm, "shift width (nonzero)");
  cmd_norm->add_option("--p", p, "exponent p > 1")->required();
  cmd_norm->add_option("--eps", eps, "block index for A/B/Bm")->check(CLI::IsMember({0, 1}));
  cmd_norm->add_option("--label", label_raw, "restrict to label: i delta [eps]")->expected(-1);
  cmd_norm->add_option("--max-iter", cfg.max_iter, "iteration cap");
  cmd_norm->add_option("--tol", cfg.tol, "relative tolerance");
  cmd_norm->add_option("--seed", cfg.seed, "extra seeded restart (0 = none)");
  add_window_flags(cmd_norm, opts);
  add_io_flags(cmd_norm, opts);

  auto* cmd_sweep = app.add_subcommand("sweep", "norm lower bounds across shift widths");
  std::vector<std::int64_t> sms, sm_range;
  bool per_label = false;
  std::string mode_name;
  double sweep_p = 4.0;
  std::optional<double> exponent;
  double exponent_raw = 0.0;
  cmd_sweep->add_option("--op", op_name, "T|U|S|S0|S1|A|B|Bm")->required();
  cmd_sweep->add_option("--m", sms, "shift widths")->expected(-1);
  cmd_sweep->add_option("--m-range", sm_range, "inclusive range LO HI")->expected(2);
  cmd_sweep->add_option("--p", sweep_p, "exponent p > 1");
  cmd_sweep->add_option("--eps", eps, "block index for A/B/Bm")->check(CLI::IsMember({0, 1}));
  cmd_sweep->add_flag("--per-label", per_label, "emit per-label rows in addition to full rows");
  cmd_sweep->add_option("--mode", mode_name, "full|per_label|both")
      ->check(CLI::IsMember({"full", "per_label", "both"}));
  auto* exp_opt = cmd_sweep->add_option("--exponent", exponent_raw, "reference curve exponent");
  cmd_sweep->add_option("--max-iter", cfg.max_iter, "iteration cap");
  cmd_sweep->add_option("--tol", cfg.tol, "relative tolerance");
  cmd_sweep->add_option("--seed", cfg.seed, "extra seeded restart (0 = none)");
  add_window_flags(cmd_sweep, opts);
  add_io_flags(cmd_sweep, opts);

  try {
    app.parse(argc, argv);

    if (cmd_partition->parsed()) {
      if (pm == 0) throw CLI::ValidationError("--m", "m must be nonzero");
      return run_partition(pm, opts);
    }
    if (cmd_verify->parsed()) {
      auto ms = resolve_ms(vms, vm_range, {1, 2, 3, 4, 5, 6, 7, 8});
      for (std::int64_t v : ms)
        if (v < 1) throw CLI::ValidationError("--m", "verification suites need m >= 1");
      return run_verify(suite, ms, fault_inject, opts);
    }
    if (cmd_decompose->parsed()) {
      bool window_given = cmd_decompose->count("--region") || cmd_decompose->count("--scales");
      return run_decompose(dm, reflect_flag, eps, interval, opts, window_given);
    }
    if (cmd_norm->parsed()) {
      if (nm == 0) throw CLI::ValidationError("--m", "m must be nonzero");
      if (p <= 1.0) throw CLI::ValidationError("--p", "p must be > 1");
      return run_norm(op_name, nm, p, eps, label_raw, cfg, opts);
    }
    if (cmd_sweep->parsed()) {
      auto ms = resolve_ms(sms, sm_range, {1, 2, 4, 8, 16});
      if (sweep_p <= 1.0) throw CLI::ValidationError("--p", "p must be > 1");
      if (*exp_opt) exponent = exponent_raw;
      std::string mode = !mode_name.empty() ? mode_name : (per_label ? "both" : "full");
      return run_sweep(op_name, ms, sweep_p, eps, mode, exponent, cfg, opts);
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

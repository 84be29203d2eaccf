#include "haarlab/normest.hpp"

#include "haarlab/parallel.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

namespace haarlab {

OperatorId operator_id_from_string(const std::string& s) {
  if (s == "T") return OperatorId::T;
  if (s == "U") return OperatorId::U;
  if (s == "S") return OperatorId::S;
  if (s == "S0") return OperatorId::S0;
  if (s == "S1") return OperatorId::S1;
  if (s == "A") return OperatorId::A;
  if (s == "B") return OperatorId::B;
  if (s == "Bm") return OperatorId::Bm;
  throw std::invalid_argument("unknown operator id '" + s + "'");
}

std::string operator_id_str(OperatorId id) {
  switch (id) {
    case OperatorId::T: return "T";
    case OperatorId::U: return "U";
    case OperatorId::S: return "S";
    case OperatorId::S0: return "S0";
    case OperatorId::S1: return "S1";
    case OperatorId::A: return "A";
    case OperatorId::B: return "B";
    case OperatorId::Bm: return "Bm";
  }
  return "?";
}

StepFunction op_image(const OpSpec& op, const GridInterval& I) {
  switch (op.id) {
    case OperatorId::T:
      return StepFunction::haar(tau(op.m, I));
    case OperatorId::U:
      return StepFunction::indicator(RatSet(tau(op.m, I)))
          .subtract(StepFunction::indicator(RatSet(I)));
    case OperatorId::S:
      return StepFunction::haar(sigma(I));
    case OperatorId::S0:
      return StepFunction::haar(unilateral_sigma(0, I));
    case OperatorId::S1:
      return StepFunction::haar(unilateral_sigma(1, I));
    case OperatorId::A:
      return a_fn(op.eps, op.m, I);
    case OperatorId::B:
      return b_fn(op.eps, I);
    case OperatorId::Bm:
      return b_fn(op.eps, I).subtract(b_fn(op.eps, tau(op.m, I)));
  }
  throw std::logic_error("op_image: bad operator id");
}

double GramValue::to_double() const {
  return haarlab::to_double(q) * (half ? std::sqrt(2.0) : 1.0);
}

std::vector<std::vector<GramValue>> gram_matrix(const OpSpec& op,
                                                const std::vector<GridInterval>& basis) {
  if (basis.empty()) throw std::invalid_argument("gram_matrix: empty basis");
  const std::size_t n = basis.size();
  std::vector<StepFunction> images(n);
  parallel_for(n, [&](std::size_t i) { images[i] = op_image(op, basis[i]); });

  std::vector<std::vector<GramValue>> g(n, std::vector<GramValue>(n));
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i; j < n; ++j) {
      Rat ip = inner_product(images[i], images[j]);
      const std::int64_t s = basis[i].scale + basis[j].scale;
      const std::int64_t par = euclid_mod(s, 2);
      GramValue v{ip * pow2((s - par) / 2), static_cast<int>(par)};
      g[i][j] = v;
      g[j][i] = std::move(v);
    }
  });
  return g;
}

namespace {

std::vector<GridInterval> window_basis(const WindowSpec& window, std::int64_t m,
                                       const std::optional<PartitionLabel>& restricted) {
  std::vector<GridInterval> basis = window.enumerate();
  if (restricted) {
    std::erase_if(basis, [&](const GridInterval& I) { return classify(m, I) != *restricted; });
  }
  return basis;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

NormReport norm_l2(const OpSpec& op, const WindowSpec& window,
                   const std::optional<PartitionLabel>& restricted) {
  NormReport rep;
  rep.op = operator_id_str(op.id);
  rep.m = op.m;
  rep.p = 2.0;
  rep.label = restricted ? restricted->str() : "full";
  rep.window = window.str();

  const std::vector<GridInterval> basis = window_basis(window, op.m, restricted);
  if (basis.empty()) throw std::invalid_argument("norm_l2: empty window basis");
  const std::size_t n = basis.size();
  const auto g = gram_matrix(op, basis);

  std::vector<std::vector<double>> gd(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gd[i][j] = g[i][j].to_double();

  // Deterministic seeding: all-ones, then one restart from the coordinate
  // maximizing the first iterate (an all-ones start can be exactly
  // orthogonal to the top eigenvector on symmetric windows).
  std::size_t pivot = 0;
  bool have_pivot = false;
  std::vector<double> best_x;
  double best_rayleigh = -1.0;

  auto iterate = [&](std::vector<double> x) {
    std::vector<double> y(n);
    double rayleigh = 0.0, prev = -1.0;
    const long cap = 10000;
    long it = 0;
    for (; it < cap; ++it) {
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += gd[i][j] * x[j];
        y[i] = s;
      }
      if (!have_pivot) {
        for (std::size_t i = 0; i < n; ++i) {
          if (std::abs(y[i]) > std::abs(y[pivot])) pivot = i;
        }
        have_pivot = true;
      }
      rayleigh = 0.0;
      for (std::size_t i = 0; i < n; ++i) rayleigh += x[i] * y[i];
      rep.residual = std::abs(rayleigh - prev);
      if (prev >= 0 && rep.residual <= 1e-10 * std::max(1.0, std::abs(rayleigh))) {
        rep.converged = true;
        ++it;
        break;
      }
      prev = rayleigh;
      double norm = 0.0;
      for (double v : y) norm += v * v;
      norm = std::sqrt(norm);
      if (norm == 0.0) break;
      for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    }
    rep.iterations += it;
    if (rayleigh > best_rayleigh) {
      best_rayleigh = rayleigh;
      best_x = std::move(x);
    }
  };

  iterate(std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
  {
    std::vector<double> e(n, 0.0);
    e[pivot] = 1.0;
    iterate(std::move(e));
  }

  if (best_rayleigh <= 0.0 || best_x.empty()) {
    rep.converged = true;
    rep.lower_bound = 0.0;
    return rep;
  }

  // Certify with the exact Rayleigh quotient at the best iterate.
  std::vector<Rat> xr(n);
  for (std::size_t i = 0; i < n; ++i) xr[i] = rat_from_double(best_x[i]);
  Rat plain = 0, root2 = 0, nsq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    nsq += xr[i] * xr[i];
    for (std::size_t j = 0; j < n; ++j) {
      Rat term = xr[i] * xr[j] * g[i][j].q;
      if (g[i][j].half) {
        root2 += term;
      } else {
        plain += term;
      }
    }
  }
  const double quad = to_double(plain) + to_double(root2) * std::sqrt(2.0);
  rep.lower_bound = std::sqrt(std::max(0.0, quad / to_double(nsq)));
  for (std::size_t i = 0; i < n; ++i) {
    if (xr[i] != 0) rep.witness.emplace_back(basis[i], xr[i]);
  }
  if (root2 == 0) rep.ratio_pth_power = plain / nsq;
  return rep;
}

namespace {

struct LpEvaluator {
  const std::vector<GridInterval>& basis;
  const std::vector<StepFunction>& images;
  double p;
  bool even;
  long p_int;

  StepFunction synthesize(const std::vector<Rat>& c) const {
    std::vector<StepFunction> parts;
    parts.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] != 0) parts.push_back(StepFunction::haar(basis[i]).scale_by(c[i]));
    }
    return StepFunction::sum(parts);
  }

  StepFunction apply(const std::vector<Rat>& c) const {
    std::vector<StepFunction> parts;
    parts.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] != 0) parts.push_back(images[i].scale_by(c[i]));
    }
    return StepFunction::sum(parts);
  }

  // |v|^{p-1} sign(v), rational-valued (exact for even integer p, floated
  // once otherwise).
  StepFunction dualize(const StepFunction& v) const {
    std::vector<Rat> vals;
    vals.reserve(v.values().size());
    for (const Rat& t : v.values()) {
      if (even) {
        vals.push_back(rat_pow(t, static_cast<unsigned long>(p_int - 1)));
      } else {
        double d = to_double(t);
        double w = d == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(d), p - 1.0), d);
        vals.push_back(rat_from_double(w));
      }
    }
    return StepFunction(v.breakpoints(), std::move(vals));
  }
};

}  // namespace

NormReport norm_lp_lower(const OpSpec& op, const WindowSpec& window, double p,
                         const std::optional<PartitionLabel>& restricted,
                         const PowerConfig& config) {
  if (p <= 1.0) throw std::invalid_argument("norm_lp_lower: p must be > 1");
  NormReport rep;
  rep.op = operator_id_str(op.id);
  rep.m = op.m;
  rep.p = p;
  rep.label = restricted ? restricted->str() : "full";
  rep.window = window.str();

  const std::vector<GridInterval> basis = window_basis(window, op.m, restricted);
  if (basis.empty()) throw std::invalid_argument("norm_lp_lower: empty window basis");
  const std::size_t n = basis.size();
  std::vector<StepFunction> images(n);
  parallel_for(n, [&](std::size_t i) { images[i] = op_image(op, basis[i]); });

  const bool even = p == std::floor(p) && static_cast<long>(p) % 2 == 0;
  const LpEvaluator ev{basis, images, p, even, even ? static_cast<long>(p) : 0};

  double best_ratio = -1.0;
  std::optional<Rat> best_pth;
  std::vector<Rat> best_c;

  auto consider = [&](const std::vector<Rat>& c, double ratio, const std::optional<Rat>& pth) {
    bool better = best_ratio < 0 ||
                  (even && best_pth && pth ? *pth > *best_pth : ratio > best_ratio);
    if (better) {
      best_ratio = ratio;
      best_pth = pth;
      best_c = c;
    }
  };

  long total_iters = 0;
  bool converged = false;
  double last_residual = 0.0;
  std::vector<double> first_update;

  auto run = [&](std::vector<Rat> c, bool capture_first) {
    double last = -1.0;
    for (long iter = 0; iter < config.max_iter; ++iter) {
      StepFunction u = ev.synthesize(c);
      if (u.is_zero()) return;
      StepFunction v = ev.apply(c);
      double ratio;
      std::optional<Rat> pth;
      if (even) {
        Rat num = lp_pth_power_even(v, ev.p_int);
        Rat den = lp_pth_power_even(u, ev.p_int);
        pth = num / den;
        ratio = std::pow(to_double(*pth), 1.0 / p);
      } else {
        ratio = lp_norm(v, p).value / lp_norm(u, p).value;
      }
      consider(c, ratio, pth);
      ++total_iters;
      if (last >= 0) {
        last_residual = std::abs(ratio - last);
        if (last_residual <= config.tol * std::max(1.0, ratio)) {
          converged = true;
          return;
        }
      }
      last = ratio;
      if (v.is_zero()) return;

      const StepFunction w = ev.dualize(v);
      std::vector<double> d(n);
      parallel_for(n, [&](std::size_t i) {
        Rat s = 0;
        const auto& b = images[i].breakpoints();
        const auto& vv = images[i].values();
        for (std::size_t t = 0; t < vv.size(); ++t) {
          if (vv[t] != 0) s += vv[t] * integral(w, b[t], b[t + 1]);
        }
        d[i] = to_double(s);
      });
      double mx = 0.0;
      for (double x : d) mx = std::max(mx, std::abs(x));
      if (mx == 0.0) return;
      std::vector<double> cn(n);
      for (std::size_t i = 0; i < n; ++i) {
        double a = std::abs(d[i]) / mx;
        cn[i] = d[i] == 0.0 ? 0.0 : std::copysign(std::pow(a, 1.0 / (p - 1.0)), d[i]);
      }
      if (capture_first && iter == 0) first_update = cn;
      for (std::size_t i = 0; i < n; ++i) c[i] = rat_from_double(cn[i]);
    }
  };

  run(std::vector<Rat>(n, Rat(1)), /*capture_first=*/true);

  std::size_t pivot = 0;
  for (std::size_t i = 1; i < first_update.size(); ++i) {
    if (std::abs(first_update[i]) > std::abs(first_update[pivot])) pivot = i;
  }
  {
    std::vector<Rat> c(n, Rat(0));
    c[pivot] = 1;
    run(std::move(c), false);
  }
  if (config.seed != 0) {
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Rat> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = rat_from_double(dist(rng));
    run(std::move(c), false);
  }

  rep.lower_bound = best_ratio;
  rep.ratio_pth_power = best_pth;
  rep.iterations = total_iters;
  rep.converged = converged;
  rep.residual = last_residual;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < best_c.size() && best_c[i] != 0) rep.witness.emplace_back(basis[i], best_c[i]);
  }
  return rep;
}

std::vector<SweepRow> sweep(OperatorId op, const std::vector<std::int64_t>& m_values, double p,
                            const WindowSpec& window, RestrictedMode mode,
                            const PowerConfig& config, std::optional<double> ref_exponent,
                            int eps) {
  const double exponent = ref_exponent.value_or(op == OperatorId::T ? 0.25 : 0.75);
  struct Task {
    OpSpec spec;
    std::optional<PartitionLabel> label;
  };
  std::vector<Task> tasks;
  for (std::int64_t m : m_values) {
    OpSpec spec{op, m, eps};
    if (mode != RestrictedMode::PerLabel) tasks.push_back({spec, std::nullopt});
    if (mode != RestrictedMode::Full) {
      for (const PartitionLabel& label : all_labels(m)) {
        if (!enumerate_collection(m, label, window, false).empty())
          tasks.push_back({spec, label});
      }
    }
  }
  std::vector<SweepRow> rows(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t t) {
    NormReport rep = norm_lp_lower(tasks[t].spec, window, p, tasks[t].label, config);
    rows[t] = SweepRow{rep.op,
                       rep.m,
                       rep.p,
                       rep.label,
                       rep.lower_bound,
                       std::pow(std::log2(2.0 + static_cast<double>(std::llabs(rep.m))), exponent),
                       rep.iterations,
                       rep.converged};
  });
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "op,m,p,label,lower_bound,ref_curve,iterations,converged\n";
  for (const auto& r : rows) {
    os << r.op << ',' << r.m << ',' << fmt_double(r.p) << ',' << r.label << ','
       << fmt_double(r.lower_bound) << ',' << fmt_double(r.ref_curve) << ',' << r.iterations << ','
       << (r.converged ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string sweep_json_lines(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    nlohmann::json j{{"op", r.op},           {"m", r.m},
                     {"p", r.p},             {"label", r.label},
                     {"lower_bound", r.lower_bound}, {"ref_curve", r.ref_curve},
                     {"iterations", r.iterations},   {"converged", r.converged}};
    os << j.dump() << '\n';
  }
  return os.str();
}

std::vector<PythagorasRecord> pythagoras_check(std::int64_t m, const PartitionLabel& label,
                                               const WindowSpec& window) {
  std::vector<PythagorasRecord> out;
  for (const NamedFamily& family : mds_families(m, label, window)) {
    PythagorasRecord rec{family.name, true, true, ""};
    std::map<std::int64_t, std::vector<StepFunction>> by_gen;
    for (const MdsMember& member : family.members) by_gen[member.generation].push_back(member.f);
    std::vector<StepFunction> gen_sums;
    for (auto& [gen, fs] : by_gen) gen_sums.push_back(StepFunction::sum(fs));

    for (std::size_t i = 0; i < gen_sums.size() && rec.orthogonal; ++i) {
      for (std::size_t j = i + 1; j < gen_sums.size(); ++j) {
        if (inner_product(gen_sums[i], gen_sums[j]) != 0) {
          rec.orthogonal = false;
          rec.detail = "cross-generation inner product does not vanish";
          break;
        }
      }
    }
    Rat total_sq = lp_pth_power_even(StepFunction::sum(gen_sums), 2);
    Rat sum_sq = 0;
    for (const StepFunction& g : gen_sums) sum_sq += lp_pth_power_even(g, 2);
    if (total_sq != sum_sq) {
      rec.pythagoras = false;
      rec.detail += std::string(rec.detail.empty() ? "" : "; ") + "||sum||^2 = " +
                    rat_str(total_sq) + " != " + rat_str(sum_sq);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace haarlab

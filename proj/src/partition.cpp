#include "haarlab/partition.hpp"

#include "haarlab/maps.hpp"
#include "haarlab/parallel.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace haarlab {

LambdaParams lambda_of(std::int64_t m) {
  if (m == 0) throw std::invalid_argument("lambda_of: m must be nonzero");
  std::int64_t a = m < 0 ? -m : m;
  std::int64_t lg = 0;
  while ((std::int64_t(1) << (lg + 1)) <= a) ++lg;
  std::int64_t lambda = std::max<std::int64_t>(4, lg + 3);
  return LambdaParams{m, lambda, lambda - 1, 2 * (lambda - 1) + 1};
}

std::string PartitionLabel::str() const {
  std::string s = std::to_string(i) + ":" + std::to_string(delta);
  if (eps) s += ":" + std::to_string(*eps);
  return s;
}

PartitionLabel classify(std::int64_t m, const GridInterval& I) {
  if (m == 0) throw std::invalid_argument("classify: m must be nonzero");
  if (I.grid != GridKind::Standard)
    throw std::invalid_argument("classify: expected a standard-grid interval, got " + interval_str(I));
  if (m < 0) return classify(-m, reflect(I));

  const LambdaParams lp = lambda_of(m);
  const std::int64_t block = std::int64_t(1) << lp.lambda;
  const std::int64_t i0 = euclid_mod(I.scale, lp.lambda);
  const std::int64_t k = I.index;

  // tau_m(I) stays inside the lambda-fold ancestor iff the index block of
  // k + m matches that of k.
  const int delta = floor_div(k + m, block) == floor_div(k, block) ? 0 : 1;
  const std::int64_t q = floor_div(k, m);
  PartitionLabel label;
  label.i = static_cast<int>(euclid_mod(q, 2) == 0 ? i0 : i0 + lp.L + 1);
  label.delta = delta;
  if (delta == 1) {
    // eps = 1 iff tau_m(I) is the leftmost scale-|I| descendant of its own
    // lambda-fold ancestor.
    label.eps = (euclid_mod(k + m, block) == 0) ? 1 : 0;
  }
  return label;
}

std::vector<PartitionLabel> all_labels(std::int64_t m) {
  const LambdaParams lp = lambda_of(m);
  std::vector<PartitionLabel> out;
  for (int delta = 0; delta <= 1; ++delta) {
    for (int i = 0; i <= lp.K; ++i) {
      if (delta == 0) {
        out.push_back(PartitionLabel{i, 0, std::nullopt});
      } else {
        out.push_back(PartitionLabel{i, 1, 0});
        out.push_back(PartitionLabel{i, 1, 1});
      }
    }
  }
  return out;
}

std::vector<GridInterval> enumerate_collection(std::int64_t m, const PartitionLabel& label,
                                               const WindowSpec& window, bool shifted) {
  std::vector<GridInterval> out;
  for (const GridInterval& I : window.enumerate()) {
    if (classify(m, I) != label) continue;
    out.push_back(shifted && label.delta == 1 ? sigma(I) : I);
  }
  return out;
}

namespace {

void check_label_family(std::int64_t m, const PartitionLabel& label,
                        std::vector<GridInterval> members, VerificationReport& report) {
  const LambdaParams lp = lambda_of(m);

  // tau_m must map the collection out of itself.
  {
    CheckRecord rec{"shift-lemma/collection-shift-disjoint", label.str(), {}, true, ""};
    for (const GridInterval& I : members) {
      if (classify(m, tau(m, I)) == label) {
        rec.pass = false;
        rec.witnesses = {I, tau(m, I)};
        rec.detail = "tau_m image stays in the collection";
        break;
      }
    }
    report.records.push_back(std::move(rec));
  }

  // Shifted view of the collection for the nestedness and ancestor checks.
  std::vector<GridInterval> shifted;
  shifted.reserve(members.size());
  for (const GridInterval& I : members) shifted.push_back(label.delta == 1 ? sigma(I) : I);

  {
    std::vector<RatSet> family;
    family.reserve(3 * shifted.size());
    std::vector<GridInterval> owner_of;  // witness mapping: family index -> source interval
    for (const GridInterval& J : shifted) {
      RatSet a(J), b(tau(m, J));
      family.push_back(a);
      owner_of.push_back(J);
      family.push_back(b);
      owner_of.push_back(J);
      family.push_back(set_union(a, b));
      owner_of.push_back(J);
    }
    CheckRecord rec{"shift-lemma/nested", label.str(), {}, true, ""};
    if (auto r = is_nested(family); !r.nested) {
      rec.pass = false;
      rec.witnesses = {owner_of[r.witness->first], owner_of[r.witness->second]};
      rec.detail = family[r.witness->first].str() + " vs " + family[r.witness->second].str();
    }
    report.records.push_back(std::move(rec));
  }

  {
    CheckRecord rec{"shift-lemma/strong-containment", label.str(), {}, true, ""};
    for (const GridInterval& J : shifted) {
      GridInterval anc = pred_in_grid(J, lp.lambda);
      if (!contains(RatSet(anc), set_union(RatSet(J), RatSet(tau(m, J))))) {
        rec.pass = false;
        rec.witnesses = {J, anc};
        rec.detail = "J u tau_m(J) escapes the lambda-fold ancestor";
        break;
      }
    }
    report.records.push_back(std::move(rec));
  }
}

}  // namespace

VerificationReport verify_shift_lemma(std::int64_t m, const WindowSpec& window,
                                      const VerifyOptions& options) {
  if (m < 1) throw std::invalid_argument("verify_shift_lemma: m must be >= 1");
  const LambdaParams lp = lambda_of(m);
  const std::vector<PartitionLabel> labels = all_labels(m);
  const std::vector<GridInterval> intervals = window.enumerate();

  std::map<PartitionLabel, std::vector<GridInterval>> groups;
  VerificationReport report;
  {
    // Labels must partition the window.
    CheckRecord rec{"shift-lemma/labels-partition", "", {}, true, ""};
    for (const GridInterval& I : intervals) {
      PartitionLabel label = classify(m, I);
      if (label.i < 0 || label.i > lp.K || (label.delta == 1) != label.eps.has_value()) {
        rec.pass = false;
        rec.witnesses = {I};
        rec.detail = "label out of range: " + label.str();
        break;
      }
      groups[label].push_back(I);
    }
    std::size_t total = 0;
    for (const auto& [label, members] : groups) total += members.size();
    if (rec.pass && total != window.count()) {
      rec.pass = false;
      rec.detail = "label groups do not partition the window";
    }
    report.records.push_back(std::move(rec));
  }

  std::vector<VerificationReport> parts(labels.size());
  parallel_for(labels.size(), [&](std::size_t t) {
    std::vector<GridInterval> members;
    if (auto it = groups.find(labels[t]); it != groups.end()) members = it->second;
    if (options.fault_inject && !members.empty()) {
      // Negative control: adopt one interval from a complementary delta class.
      for (const auto& [other, other_members] : groups) {
        if (other.i == labels[t].i && other.delta != labels[t].delta && !other_members.empty()) {
          members.push_back(other_members.front());
          break;
        }
      }
    }
    check_label_family(m, labels[t], std::move(members), parts[t]);
  });
  for (auto& p : parts) report.append(std::move(p));
  return report;
}

VerificationReport check_shifted_inclusion(std::int64_t m, std::int64_t i, const GridInterval& I,
                                           const WindowSpec& window) {
  if (m < 1) throw std::invalid_argument("check_shifted_inclusion: m must be >= 1");
  const LambdaParams lp = lambda_of(m);
  if (euclid_mod(I.scale, lp.lambda) != euclid_mod(i, lp.lambda))
    throw std::invalid_argument("check_shifted_inclusion: interval scale does not match level class");

  VerificationReport report;
  CheckRecord rec{"shift-lemma/shifted-inclusion", "i=" + std::to_string(i), {}, true, ""};
  const RatSet Iset(I);
  const RatSet sI(sigma(I));
  for (const GridInterval& J : window.enumerate()) {
    if (J.scale != I.scale + lp.lambda) continue;
    if (!contains(Iset, RatSet(J))) continue;
    if (intersects(RatSet(tau(m, J)), Iset)) continue;  // not in the exiting class
    const GridInterval sJ = sigma(J);
    if (!contains(sI, RatSet(sJ)) || !contains(sI, RatSet(tau(m, sJ)))) {
      rec.pass = false;
      rec.witnesses = {J, I};
      rec.detail = "sigma(J) u tau_m(sigma(J)) escapes sigma(I)";
      break;
    }
  }
  report.records.push_back(std::move(rec));
  return report;
}

std::vector<RatSet> filtration_atoms(std::int64_t m, const PartitionLabel& label, std::int64_t j,
                                     const WindowSpec& window) {
  std::vector<RatSet> family;
  for (const GridInterval& J : enumerate_collection(m, label, window, /*shifted=*/true)) {
    if (J.scale > j) continue;
    family.push_back(set_union(RatSet(J), RatSet(tau(m, J))));
  }
  RatSet region = window.region();
  for (const RatSet& s : family) region = set_union(region, s);
  region = RatSet(region.inf(), region.sup());
  return atoms_of_nested_family(family, region);
}

}  // namespace haarlab

#include "idim/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

namespace idim {
namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

void sort_unique(std::vector<Rational>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

}  // namespace

std::string DimReport::line() const {
  return "rules=" + std::to_string(num_rules) + " integral=" + integral.str() +
         " dimension=" + dimension.str();
}

DimReport compute_dim(const TransactionDatabase& db, const MiningParams& params) {
  const RuleSet rules = mine_rules(db, params);
  RulesDimension dim = intrinsic_dimension_exact(rules);
  return DimReport{rules.size(), std::move(dim.integral), std::move(dim.dimension)};
}

std::vector<SweepRow> run_sweep(const TransactionDatabase& db, const SweepConfig& config) {
  if (config.supports.empty()) throw std::invalid_argument("empty list of supports");
  if (config.confidences.empty()) throw std::invalid_argument("empty list of confidences");
  std::vector<Rational> supports = config.supports;
  std::vector<Rational> confidences = config.confidences;
  sort_unique(supports);
  sort_unique(confidences);
  for (const Rational& s : supports) {
    MiningParams{s, confidences.front(), config.max_itemset_size}.validate();
  }
  for (const Rational& c : confidences) MiningParams{supports.front(), c}.validate();

  std::vector<SweepRow> rows;
  rows.reserve(supports.size() * confidences.size());
  for (const Rational& s : supports) {
    auto table = std::make_shared<const FrequentItemsetTable>(
        FrequentItemsetTable::mine(db, s, config.max_itemset_size));
    for (const Rational& c : confidences) {
      const RuleSet rules = derive_rules(db, table, c, config.include_empty_body);
      RulesDimension dim = intrinsic_dimension_exact(rules);
      rows.push_back(SweepRow{config.dataset, s, c, rules.size(), std::move(dim.integral),
                              std::move(dim.dimension)});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.min_confidence != b.min_confidence ? a.min_confidence < b.min_confidence
                                                : a.min_support < b.min_support;
  });
  return rows;
}

std::string sweep_csv_header() {
  return "dataset,min_support,min_confidence,num_rules,integral,dimension,integral_exact";
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << sweep_csv_header() << '\n';
  for (const SweepRow& r : rows) {
    out << csv_field(r.dataset) << ',' << format_double(r.min_support.to_double()) << ','
        << format_double(r.min_confidence.to_double()) << ',' << r.num_rules << ','
        << r.integral.decimal() << ',' << r.dimension.decimal() << ','
        << (r.integral.is_exact() ? r.integral.exact().str() : std::string()) << '\n';
  }
}

std::vector<CurveSample> sample_curve(const StepFunction& curve, std::size_t resolution) {
  std::vector<Scalar> alphas{Scalar(0), Scalar(1)};
  for (const auto& step : curve.steps()) alphas.push_back(step.start);
  for (std::size_t i = 1; resolution > 0 && i < resolution; ++i) {
    alphas.push_back(Rational(static_cast<std::int64_t>(i), static_cast<std::int64_t>(resolution)));
  }
  auto less = [](const Scalar& a, const Scalar& b) { return a < b; };
  std::sort(alphas.begin(), alphas.end(), less);
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  std::vector<Scalar> with_midpoints;
  with_midpoints.reserve(2 * alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (i > 0) with_midpoints.push_back((alphas[i - 1] + alphas[i]) / Scalar(2));
    with_midpoints.push_back(alphas[i]);
  }

  std::vector<CurveSample> samples;
  samples.reserve(with_midpoints.size());
  for (Scalar& a : with_midpoints) {
    Scalar value = curve(a);
    samples.push_back({std::move(a), std::move(value)});
  }
  return samples;
}

void write_curve_csv(std::ostream& out, std::span<const CurveSample> samples) {
  out << "alpha,obs_diam,alpha_exact,obs_diam_exact\n";
  for (const CurveSample& s : samples) {
    out << s.alpha.decimal() << ',' << s.value.decimal() << ','
        << (s.alpha.is_exact() ? s.alpha.str() : std::string()) << ','
        << (s.value.is_exact() ? s.value.str() : std::string()) << '\n';
  }
}

void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& write) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
      write(out);
      out.flush();
      if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw;
  }
}

}  // namespace idim

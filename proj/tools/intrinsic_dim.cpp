// intrinsic_dim: intrinsic dimension of association-rule feature families.
//
// Exit codes: 0 success, 2 input error (IO / parse), 3 usage error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idim/experiment.hpp"
#include "idim/ingest.hpp"
#include "idim/mining.hpp"
#include "idim/synthetic.hpp"

namespace {

constexpr int kInputError = 2;
constexpr int kUsageError = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

idim::Rational parse_threshold(const std::string& text, const char* name) {
  try {
    return idim::Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid ") + name + ": '" + text + "'");
  }
}

std::vector<idim::Rational> parse_thresholds(const std::vector<std::string>& items,
                                             const char* name) {
  std::vector<idim::Rational> out;
  for (const auto& item : items) {
    if (!item.empty()) out.push_back(parse_threshold(item, name));
  }
  if (out.empty()) throw UsageError(std::string("empty list of ") + name);
  return out;
}

idim::MiningParams make_params(const std::string& support, const std::string& confidence,
                               std::optional<std::size_t> max_size, bool empty_body) {
  idim::MiningParams params{parse_threshold(support, "min-support"),
                            parse_threshold(confidence, "min-confidence"), max_size, empty_body};
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return params;
}

idim::ParsedDatabase load(const std::string& path, std::optional<std::size_t> universe) {
  return idim::read_transactions_file(path, universe);
}

void emit(const std::string& out_path, const std::function<void(std::ostream&)>& write) {
  if (out_path.empty() || out_path == "-") {
    write(std::cout);
  } else {
    idim::write_file_atomically(out_path, write);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intrinsic dimension of association-rule feature families"};
  app.require_subcommand(1);

  std::string path;
  std::optional<std::size_t> universe;
  std::optional<std::size_t> max_size;
  bool empty_body = false;
  std::string min_support;
  std::string min_confidence;
  std::string out_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("path", path, "FIMI transaction file")->required();
    cmd->add_option("--universe", universe, "declared item universe size |I|");
  };
  auto add_mining = [&](CLI::App* cmd) {
    cmd->add_option("--max-size", max_size, "maximum itemset size");
    cmd->add_flag("--include-empty-body", empty_body, "admit rules with an empty body");
  };

  auto* stats = app.add_subcommand("stats", "print dataset statistics as key=value");
  add_common(stats);
  bool stats_csv = false;
  stats->add_flag("--csv", stats_csv, "print a CSV header and row instead");

  auto* dim = app.add_subcommand("dim", "intrinsic dimension at one threshold pair");
  add_common(dim);
  add_mining(dim);
  dim->add_option("--min-support", min_support)->required();
  dim->add_option("--min-confidence", min_confidence)->required();

  auto* sweep = app.add_subcommand("sweep", "dimension over a support x confidence grid");
  add_common(sweep);
  add_mining(sweep);
  std::vector<std::string> supports;
  std::vector<std::string> confidences;
  std::string dataset;
  sweep->add_option("--supports", supports, "comma-separated min supports")
      ->required()
      ->delimiter(',')
      ->allow_extra_args(false);
  sweep->add_option("--confidences", confidences, "comma-separated min confidences")
      ->required()
      ->delimiter(',')
      ->allow_extra_args(false);
  sweep->add_option("--out", out_path, "CSV output path (stdout if omitted)");
  sweep->add_option("--dataset", dataset, "dataset name column (default: file stem)");

  auto* curve = app.add_subcommand("curve", "exact observable diameter step function as CSV");
  add_common(curve);
  add_mining(curve);
  std::size_t resolution = 0;
  curve->add_option("--min-support", min_support)->required();
  curve->add_option("--min-confidence", min_confidence)->required();
  curve->add_option("--resolution", resolution, "also sample the uniform grid i/resolution");
  curve->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  auto* synth = app.add_subcommand("synth", "synthetic structures and databases");
  std::optional<std::size_t> cube;
  std::string random_spec;
  auto* cube_opt = synth->add_option("--cube", cube, "Hamming cube dimension n");
  auto* random_opt =
      synth->add_option("--random", random_spec, "seed,n_items,n_transactions,probability");
  cube_opt->excludes(random_opt);
  synth->add_option("--out", out_path, "FIMI output path for --random (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (stats->parsed()) {
      const auto parsed = load(path, universe);
      if (stats_csv) {
        std::cout << idim::DatasetStats::csv_header() << '\n' << parsed.stats.csv_row() << '\n';
      } else {
        std::cout << parsed.stats.to_key_value();
      }
    } else if (dim->parsed()) {
      const auto params = make_params(min_support, min_confidence, max_size, empty_body);
      const auto parsed = load(path, universe);
      std::cout << idim::compute_dim(parsed.db, params).line() << '\n';
    } else if (sweep->parsed()) {
      idim::SweepConfig config;
      config.supports = parse_thresholds(supports, "supports");
      config.confidences = parse_thresholds(confidences, "confidences");
      config.max_itemset_size = max_size;
      config.include_empty_body = empty_body;
      config.dataset = dataset.empty() ? std::filesystem::path(path).stem().string() : dataset;
      for (const auto& s : config.supports) make_params(s.str(), "1", max_size, empty_body);
      for (const auto& c : config.confidences) make_params("1", c.str(), max_size, empty_body);
      const auto parsed = load(path, universe);
      const auto rows = idim::run_sweep(parsed.db, config);
      emit(out_path, [&](std::ostream& out) { idim::write_sweep_csv(out, rows); });
    } else if (curve->parsed()) {
      const auto params = make_params(min_support, min_confidence, max_size, empty_body);
      const auto parsed = load(path, universe);
      const auto rules = idim::mine_rules(parsed.db, params);
      const auto samples = idim::sample_curve(idim::obs_diam_rules_curve(rules), resolution);
      emit(out_path, [&](std::ostream& out) { idim::write_curve_csv(out, samples); });
    } else if (synth->parsed()) {
      if (cube) {
        if (*cube == 0) throw UsageError("--cube must be positive");
        const auto est = idim::intrinsic_dimension_breakpoints(idim::hamming_cube_structure({*cube}));
        std::cout << "n=" << *cube << " integral=" << est.integral.str()
                  << " dimension=" << est.dimension.decimal() << '\n';
      } else if (!random_spec.empty()) {
        std::vector<std::string> parts;
        std::stringstream ss(random_spec);
        for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
        if (parts.size() != 4) throw UsageError("--random expects seed,n_items,n_transactions,p");
        idim::RandomDatabaseSpec spec;
        try {
          spec.seed = std::stoull(parts[0]);
          spec.n_items = std::stoul(parts[1]);
          spec.n_transactions = std::stoul(parts[2]);
          spec.item_probability = std::stod(parts[3]);
        } catch (const std::exception&) {
          throw UsageError("malformed --random specification '" + random_spec + "'");
        }
        idim::TransactionDatabase db = [&] {
          try {
            return idim::random_transaction_db(spec);
          } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
          }
        }();
        emit(out_path, [&](std::ostream& out) { idim::write_transactions(out, db); });
      } else {
        throw UsageError("synth needs --cube or --random");
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const idim::IngestError& e) {
    std::cerr << "error: " << path << ": " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}

#include "tubal/commands.hpp"

#include <chrono>
#include <iostream>
#include <string_view>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tubal/discovery.hpp"
#include "tubal/io.hpp"
#include "tubal/tsvd.hpp"

namespace tubal::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const json& doc, const std::string& path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

json norms_of(const std::vector<Tube>& sigma) {
  json arr = json::array();
  for (const Tube& s : sigma) arr.push_back(s.data().norm());
  return arr;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericFailure;
  }
}

struct ResolvedOp {
  BlackBoxOp op;
  std::optional<double> fit_residual;
};

Index required_n(const std::optional<Index>& n, std::string_view op) {
  if (!n) throw UsageError("--n is required for --op " + std::string(op));
  if (*n < 1) throw UsageError("--n must be positive");
  return *n;
}

void require_n_matches(const std::optional<Index>& n, Index actual, std::string_view op) {
  if (n && *n != actual) {
    throw UsageError("--op " + std::string(op) + " has dimension " + std::to_string(actual) +
                     ", not " + std::to_string(*n));
  }
}

ResolvedOp resolve_op(const std::string& name, const std::optional<Index>& n) {
  if (name == "tprod") return {circ_conv_op(required_n(n, name)), std::nullopt};
  if (name == "negacyclic") return {negacyclic_conv_op(required_n(n, name)), std::nullopt};
  if (name == "splitc") {
    require_n_matches(n, 2, name);
    return {split_complex_op(), std::nullopt};
  }
  if (name == "dual") {
    require_n_matches(n, 2, name);
    return {dual_numbers_op(), std::nullopt};
  }
  if (name.starts_with("xor:")) {
    int k = -1;
    try {
      std::size_t used = 0;
      k = std::stoi(name.substr(4), &used);
      if (used != name.size() - 4) k = -1;
    } catch (const std::exception&) {
      k = -1;
    }
    if (k < 0 || k > 16) throw UsageError("expected xor:k with 0 <= k <= 16");
    const Index dim = Index{1} << k;
    require_n_matches(n, dim, name);
    return {xor_conv_op(dim), std::nullopt};
  }
  if (name.starts_with("table:")) {
    const OpTable table = read_op_table(name.substr(6));
    require_n_matches(n, table.n, "table");
    ProbedOp fitted = op_from_probes(table.n, table.probes);
    return {std::move(fitted.op), fitted.fit_residual};
  }
  throw UsageError("unknown op '" + name + "'");
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
    case ErrorCode::Parse:
      return kIoError;
    case ErrorCode::SvdNoConvergence:
    case ErrorCode::ResidualImaginary:
    case ErrorCode::NotScaledUnitary:
    case ErrorCode::NotDiagonalizable:
    case ErrorCode::ResidualTooLarge:
      return kNumericFailure;
    default:
      return kBadArguments;
  }
}

int run_compress(const CompressOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.rank.has_value() == opts.multirank.has_value()) {
      throw UsageError("give exactly one of --rank or --multirank");
    }
    if (opts.output.empty()) throw UsageError("--output is required");
    const Tensor3 a = read_tensor_file(opts.input);
    const TransformSpec spec = transform_from_name(opts.transform, a.tube_size());

    const auto start = std::chrono::steady_clock::now();
    const TSVDFactors f = tsvd(spec, a);
    Tensor3 approx;
    std::optional<double> tail;
    json report{{"transform", opts.transform},
                {"dims", {a.rows(), a.cols(), a.tube_size()}}};
    if (opts.rank) {
      approx = truncate_rank(f, *opts.rank);
      if (spec.unitary_scale()) tail = tail_error(f, *opts.rank);
      report["rank"] = *opts.rank;
    } else {
      const MultiRank r{*opts.multirank};
      approx = truncate_multirank(f, r);
      if (spec.unitary_scale()) tail = tail_error(f, r);
      report["multirank"] = r.r;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    write_tensor_file(opts.output, approx);

    const double norm_a = frobenius_norm(a);
    const double err_abs = frobenius_norm(a - approx);
    report["relative_error"] = norm_a > 0.0 ? err_abs / norm_a : 0.0;
    report["tail_relative_error"] =
        tail ? json(norm_a > 0.0 ? *tail / norm_a : 0.0) : json(nullptr);
    report["singular_tube_norms"] = norms_of(f.sigma);
    report["wall_time_seconds"] = seconds;
    emit(report, opts.report, out);
    return int{kOk};
  });
}

int run_discover(const DiscoverOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ResolvedOp resolved = resolve_op(opts.op, opts.n);
    DiscoveryOptions dopts;
    dopts.seed = opts.seed;

    DiscoveryReport report;
    if (resolved.fit_residual && *resolved.fit_residual > dopts.residual_tol) {
      report.reason = NotTubalReason::NotBilinear;
      report.diagnostics.max_residual = *resolved.fit_residual;
      report.diagnostics.detail = "probes are not explained by any bilinear op";
    } else {
      report = classify_ring(resolved.op, dopts);
    }

    auto number_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json diag{{"eigenvector_condition", number_or_null(report.diagnostics.eigenvector_condition)},
              {"max_residual", number_or_null(report.diagnostics.max_residual)},
              {"trials_used", report.diagnostics.trials_used},
              {"detail", report.diagnostics.detail}};
    if (resolved.fit_residual) diag["table_fit_residual"] = *resolved.fit_residual;
    json doc{{"op", opts.op},
             {"n", resolved.op.n},
             {"seed", opts.seed},
             {"verdict", report.is_tubal() ? "Tubal" : "NotTubal"},
             {"reason", report.reason ? json(std::string(to_string(*report.reason))) : json(nullptr)},
             {"diagnostics", diag}};
    if (report.is_tubal()) {
      doc["transform"] = transform_to_json(report.transform->matrix());
      doc["realness"] = report.transform->realness();
    } else {
      doc["transform"] = nullptr;
      doc["realness"] = nullptr;
    }
    emit(doc, opts.out, out);
    return int{report.is_tubal() ? kOk : kNotTubal};
  });
}

int run_info(const InfoOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Tensor3 a = read_tensor_file(opts.input);
    const TransformSpec spec = transform_from_name(opts.transform, a.tube_size());
    const TSVDFactors f = tsvd(spec, a);
    json doc{{"dims", {a.rows(), a.cols(), a.tube_size()}},
             {"transform", opts.transform},
             {"realness", spec.realness()},
             {"rank", m_rank(f)},
             {"multirank", multirank(f).r},
             {"singular_tube_norms", norms_of(f.sigma)},
             {"frobenius_norm", frobenius_norm(a)}};
    doc["unitary_scale"] = spec.unitary_scale() ? json(*spec.unitary_scale()) : json(nullptr);
    emit(doc, "", out);
    return int{kOk};
  });
}

int run_optable(const OpTableOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.op.starts_with("table:")) throw UsageError("optable needs a built-in op");
    if (opts.probes < 0) throw UsageError("--probes must be non-negative");
    const ResolvedOp resolved = resolve_op(opts.op, opts.n);
    const OpTable table = sample_op_table(resolved.op, opts.probes, opts.seed);
    if (opts.out.empty()) {
      out << op_table_to_json(table).dump() << "\n";
    } else {
      write_op_table(opts.out, table);
    }
    return int{kOk};
  });
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tubal tensor algebra: t-SVD compression and tubal ring discovery", "tubal"};
  app.require_subcommand(1);

  CompressOptions compress;
  std::vector<Index> multirank;
  auto* c = app.add_subcommand("compress", "Truncated t-SVD of a tensor file");
  c->add_option("--input", compress.input, "Input tensor file (TNS3)")->required();
  c->add_option("--transform", compress.transform,
                "dft, skew-dft, wht, split-complex, complex-field, identity, canonical:n,m, file:PATH")
      ->capture_default_str();
  auto* rank_opt = c->add_option("--rank", compress.rank, "Target *_M-rank");
  auto* mr_opt = c->add_option("--multirank", multirank, "Per-slice ranks r1,...,rn")->delimiter(',');
  rank_opt->excludes(mr_opt);
  c->add_option("--output", compress.output, "Output tensor file")->required();
  c->add_option("--report", compress.report, "JSON report path (default: stdout)");

  DiscoverOptions discover;
  auto* d = app.add_subcommand("discover", "Recover M from a black-box tubal product");
  d->add_option("--op", discover.op, "tprod | negacyclic | xor:k | splitc | dual | table:PATH")->required();
  d->add_option("--n", discover.n, "Tube length");
  d->add_option("--seed", discover.seed, "Random seed")->capture_default_str();
  d->add_option("--out", discover.out, "JSON report path (default: stdout)");

  InfoOptions info;
  auto* i = app.add_subcommand("info", "Rank, multirank and singular tubes of a tensor file");
  i->add_option("--input", info.input, "Input tensor file (TNS3)")->required();
  i->add_option("--transform", info.transform, "Transform name")->capture_default_str();

  OpTableOptions optable;
  auto* t = app.add_subcommand("optable", "Sample a built-in op into a probe table");
  t->add_option("--op", optable.op, "tprod | negacyclic | xor:k | splitc | dual")->required();
  t->add_option("--n", optable.n, "Tube length");
  t->add_option("--probes", optable.probes, "Random probes beyond the n^2 basis pairs")
      ->capture_default_str();
  t->add_option("--seed", optable.seed, "Random seed")->capture_default_str();
  t->add_option("--out", optable.out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  }

  if (*c) {
    if (!mr_opt->empty()) compress.multirank = multirank;
    return run_compress(compress, out, err);
  }
  if (*d) return run_discover(discover, out, err);
  if (*i) return run_info(info, out, err);
  return run_optable(optable, out, err);
}

}  // namespace tubal::cli

#include "mixedsimplex/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <limits>
#include <numbers>
#include <sstream>

#include "mixedsimplex/error.hpp"
#include "mixedsimplex/info_theory.hpp"
#include "mixedsimplex/json_io.hpp"
#include "mixedsimplex/mfsa.hpp"
#include "mixedsimplex/special.hpp"
#include "mixedsimplex/transforms.hpp"

namespace mixedsimplex::cli {
namespace {

using io::Json;

struct Io {
  std::istream& in;
  std::ostream& out;
};

std::string slurp(std::istream& s) {
  return {std::istreambuf_iterator<char>(s), std::istreambuf_iterator<char>()};
}

// "-" or empty reads stdin.
Json read_json(const std::string& path, Io& io) {
  if (path.empty() || path == "-") return io::parse(slurp(io.in));
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  return io::parse(slurp(f));
}

void write_json(const Json& j, const std::string& path, Io& io) {
  if (path.empty() || path == "-") {
    io.out << j.dump() << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  f << j.dump() << '\n';
}

std::string csv_number(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

double in_units(double nats, bool bits) { return bits ? to_bits(nats) : nats; }

// A distribution document, or a sampler spec resolved to a distribution:
// Gaussian-sparsemax with K = 2 in closed form, anything else empirically.
MixedDistribution load_distribution(const Json& j, std::size_t n, std::uint64_t seed, double tol) {
  if (!j.is_object() || !j.contains("kind")) return io::distribution_from_json(j);
  const SamplerSpec spec = io::spec_from_json(j);
  if (const auto* g = std::get_if<GaussianSparsemax>(&spec); g && g->z.size() == 2) {
    const ScalarGaussian s = gaussian_sparsemax_scalar(*g);
    return gaussian_sparsemax_k2_distribution(s.z, s.sigma);
  }
  return empirical_distribution(sample(spec, RngState(seed), n), tol);
}

Json entropy_json(const EntropyReport& r, bool bits) {
  Json faces = Json::array();
  for (const auto& f : r.per_face)
    faces.push_back({{"indices", io::to_json(f.face)},
                     {"mass", f.mass},
                     {"conditional_entropy", in_units(f.conditional_entropy, bits)}});
  return {{"units", bits ? "bits" : "nats"},
          {"discrete", in_units(r.discrete_part, bits)},
          {"continuous", in_units(r.continuous_part, bits)},
          {"total", in_units(r.total, bits)},
          {"faces", std::move(faces)}};
}

// ---------------------------------------------------------------------------
// fig

void fig_entmax_curve(std::ostream& out, double alpha, double t_min, double t_max, int points) {
  out << "t,y1,y2\n";
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? t_min : t_min + (t_max - t_min) * i / (points - 1);
    const SimplexPoint y = entmax(LogitVector({t, 0.0}), alpha);
    out << csv_number(t) << ',' << csv_number(y[0]) << ',' << csv_number(y[1]) << '\n';
  }
}

void fig_maxent_vs_k(std::ostream& out, int k_max, int n_max, bool bits) {
  out << "K,discrete,continuous";
  for (int N = 0; N <= n_max; ++N) out << ",N" << N;
  out << '\n';
  for (int K = 2; K <= k_max; ++K) {
    out << K << ',' << csv_number(in_units(std::log(K), bits)) << ','
        << csv_number(in_units(-log_factorial(K - 1), bits));
    for (int N = 0; N <= n_max; ++N)
      out << ',' << csv_number(in_units(maxent_over_faces(K, N).value, bits));
    out << '\n';
  }
}

void fig_rectify_density(std::ostream& out, double z, double sigma, int points) {
  out << "y,density,P0,P1\n";
  for (int i = 0; i < points; ++i) {
    const double y = points == 1 ? 0.5 : static_cast<double>(i) / (points - 1);
    const auto d = gaussian_sparsemax_density_k2(y, z, sigma);
    out << csv_number(y) << ',' << csv_number(d.interior_density) << ',' << csv_number(d.p0) << ','
        << csv_number(d.p1) << '\n';
  }
}

// ---------------------------------------------------------------------------
// fsa

void run_fsa(const std::string& verb, const std::string& in1, const std::string& in2,
             const std::string& out_path, const std::string& string_path, double tol, Io& io) {
  auto first = [&] { return io::mfsa_from_json(read_json(in1, io)); };
  auto second = [&] {
    if (in2.empty()) throw Error(ErrorKind::InvalidArgument, verb + " needs --in2");
    return io::mfsa_from_json(read_json(in2, io));
  };
  auto mixed_string = [&] {
    if (string_path.empty()) throw Error(ErrorKind::InvalidArgument, verb + " needs --string");
    return io::string_from_json(read_json(string_path, io));
  };
  auto emit = [&](const Json& j) { write_json(j, out_path, io); };

  if (verb == "accept") {
    const Mfsa a = first();
    emit({{"accepted", accepts(a, mixed_string(), tol)}});
  } else if (verb == "weight") {
    const Mfsa a = first();
    emit({{"weight", string_weight(a, mixed_string(), tol)}});
  } else if (verb == "determinize") {
    emit(io::to_json(determinize(first())));
  } else if (verb == "complement") {
    emit(io::to_json(complement(first())));
  } else if (verb == "union") {
    emit(io::to_json(unite(first(), second())));
  } else if (verb == "intersect") {
    emit(io::to_json(intersect(first(), second())));
  } else if (verb == "concat") {
    emit(io::to_json(concatenate(first(), second())));
  } else if (verb == "rmeps") {
    emit(io::to_json(epsilon_removal(first())));
  } else if (verb == "push") {
    emit(io::to_json(weight_push(first())));
  } else if (verb == "skeleton") {
    if (string_path.empty()) {
      emit(io::to_json(skeleton_automaton(first())));
    } else {
      Json faces = Json::array();
      for (Face f : skeleton_string(mixed_string(), tol)) faces.push_back(io::to_json(f));
      emit({{"skeleton", std::move(faces)}});
    }
  } else {  // project
    if (string_path.empty()) {
      emit(io::to_json(projection_automaton(first())));
    } else {
      Json words = Json::array();
      for (const auto& w : projection_string(mixed_string(), tol)) {
        Json word = Json::array();
        for (std::size_t k : w) word.push_back(k + 1);
        words.push_back(std::move(word));
      }
      emit({{"projections", std::move(words)}});
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Io io{in, out};
  CLI::App app{"Mixed random variables on the probability simplex"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "RNG seed for randomized commands")->capture_default_str();

  // transform
  auto* transform = app.add_subcommand("transform", "map a JSON logit vector on stdin to the simplex");
  std::string kind = "softmax";
  double alpha = 1.5, beta = 1.0;
  std::size_t topk = 1;
  transform->add_option("--kind", kind)
      ->check(CLI::IsMember({"softmax", "sparsemax", "entmax", "topk", "argmax"}))
      ->capture_default_str();
  transform->add_option("--alpha", alpha)->capture_default_str();
  transform->add_option("--beta", beta)->capture_default_str();
  transform->add_option("--k", topk)->capture_default_str();

  // sample / faces
  std::string spec_path;
  std::size_t n = 10000;
  double tol = kDefaultFaceTolerance;
  auto* sample_cmd = app.add_subcommand("sample", "draw samples as JSON lines");
  sample_cmd->add_option("--spec", spec_path, "sampler spec (JSON)")->required();
  sample_cmd->add_option("--n", n)->capture_default_str();
  sample_cmd->add_option("--seed", seed);
  auto* faces_cmd = app.add_subcommand("faces", "Monte Carlo face probabilities of a sampler");
  faces_cmd->add_option("--spec", spec_path)->required();
  faces_cmd->add_option("--n", n)->capture_default_str();
  faces_cmd->add_option("--tol", tol)->capture_default_str();
  faces_cmd->add_option("--seed", seed);

  // information theory
  std::string in_path, in2_path;
  bool bits = false;
  int N = 0;
  int K = 2;
  std::string format = "json";
  auto* entropy_cmd = app.add_subcommand("entropy", "direct-sum entropy");
  entropy_cmd->add_option("--in", in_path, "distribution or sampler spec (default stdin)");
  entropy_cmd->add_option("--n", n, "samples for empirical estimates")->capture_default_str();
  entropy_cmd->add_option("--tol", tol);
  entropy_cmd->add_option("--seed", seed);
  entropy_cmd->add_flag("--bits", bits);
  auto* coding_cmd = app.add_subcommand("coding-entropy", "entropy of an N-bit quantized code");
  coding_cmd->add_option("--in", in_path);
  coding_cmd->add_option("--N", N)->required()->check(CLI::NonNegativeNumber);
  coding_cmd->add_option("--n", n);
  coding_cmd->add_option("--tol", tol);
  coding_cmd->add_option("--seed", seed);
  coding_cmd->add_flag("--bits", bits);
  auto* maxent_cmd = app.add_subcommand("maxent", "maximum entropy over the face lattice");
  maxent_cmd->add_option("--K", K)->required()->check(CLI::Range(1, 1 << 20));
  maxent_cmd->add_option("--N", N)->required()->check(CLI::NonNegativeNumber);
  maxent_cmd->add_flag("--bits", bits);
  maxent_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  auto* kl_cmd = app.add_subcommand("kl", "KL divergence KL(p||q)");
  kl_cmd->add_option("--p", in_path)->required();
  kl_cmd->add_option("--q", in2_path)->required();
  kl_cmd->add_option("--n", n);
  kl_cmd->add_option("--seed", seed);
  kl_cmd->add_flag("--bits", bits);
  auto* mi_cmd = app.add_subcommand("mi", "mutual information I(Y;Z) for discrete Z");
  mi_cmd->add_option("--in", in_path);
  mi_cmd->add_flag("--bits", bits);

  // automata
  auto* fsa_cmd = app.add_subcommand("fsa", "mixed finite-state automata");
  std::string verb, out_path, string_path;
  fsa_cmd->add_option("verb", verb)
      ->required()
      ->check(CLI::IsMember({"accept", "weight", "determinize", "union", "intersect", "complement",
                             "concat", "skeleton", "project", "rmeps", "push"}));
  fsa_cmd->add_option("--in", in_path, "automaton (default stdin)");
  fsa_cmd->add_option("--in2", in2_path);
  fsa_cmd->add_option("--out", out_path, "output file (default stdout)");
  fsa_cmd->add_option("--string", string_path, "mixed string (JSON array of points)");
  fsa_cmd->add_option("--tol", tol)->capture_default_str();

  // figures
  auto* fig_cmd = app.add_subcommand("fig", "figure data as CSV");
  std::string fig_name, fig_out = "csv";
  double t_min = -3.0, t_max = 3.0, z = 0.5, sigma = 0.3;
  int points = 601, k_max = 10, n_max = 3;
  fig_cmd->add_option("--name", fig_name)
      ->required()
      ->check(CLI::IsMember({"entmax-curve", "maxent-vs-K", "rectify-density"}));
  fig_cmd->add_option("--out", fig_out)->check(CLI::IsMember({"csv"}))->capture_default_str();
  fig_cmd->add_option("--alpha", alpha)->capture_default_str();
  fig_cmd->add_option("--t-min", t_min)->capture_default_str();
  fig_cmd->add_option("--t-max", t_max)->capture_default_str();
  fig_cmd->add_option("--points", points)->check(CLI::PositiveNumber)->capture_default_str();
  fig_cmd->add_option("--K-max", k_max)->check(CLI::Range(2, 1 << 20))->capture_default_str();
  fig_cmd->add_option("--N-max", n_max)->check(CLI::NonNegativeNumber)->capture_default_str();
  fig_cmd->add_option("--z", z)->capture_default_str();
  fig_cmd->add_option("--sigma", sigma)->capture_default_str();
  fig_cmd->add_flag("--bits", bits);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (transform->parsed()) {
      const Json zj = io::parse(slurp(in));
      if (!zj.is_array()) throw Error(ErrorKind::ParseError, "expected a JSON array of logits");
      std::vector<double> zs;
      for (const auto& v : zj) {
        if (!v.is_number()) throw Error(ErrorKind::ParseError, "logits must be numbers");
        zs.push_back(v.get<double>());
      }
      const LogitVector lz(std::move(zs));
      SimplexPoint y = kind == "softmax"     ? softmax(lz, beta)
                       : kind == "sparsemax" ? sparsemax(lz)
                       : kind == "entmax"    ? entmax(lz, alpha)
                       : kind == "topk"      ? topk_softmax(lz, topk, beta)
                                             : argmax_indicator(lz);
      out << io::to_json(y).dump() << '\n';
    } else if (sample_cmd->parsed()) {
      const SamplerSpec spec = io::spec_from_json(read_json(spec_path, io));
      for (const auto& y : sample(spec, RngState(seed), n)) out << io::to_json(y).dump() << '\n';
    } else if (faces_cmd->parsed()) {
      const SamplerSpec spec = io::spec_from_json(read_json(spec_path, io));
      const FaceHistogram h = estimate_face_probs(spec, n, tol, RngState(seed));
      Json faces = Json::array();
      for (const auto& [f, c] : h.counts)
        faces.push_back({{"indices", io::to_json(f)},
                         {"count", c},
                         {"probability", h.probability(f)},
                         {"standard_error", h.standard_error(f)}});
      out << Json{{"n", h.total}, {"tolerance", h.tolerance}, {"faces", std::move(faces)}}.dump()
          << '\n';
    } else if (entropy_cmd->parsed()) {
      const auto d = load_distribution(read_json(in_path, io), n, seed, tol);
      out << entropy_json(direct_sum_entropy(d), bits).dump() << '\n';
    } else if (coding_cmd->parsed()) {
      const auto d = load_distribution(read_json(in_path, io), n, seed, tol);
      const EntropyReport r = direct_sum_entropy(d);
      const double dim = expected_dimension(d);
      out << Json{{"units", bits ? "bits" : "nats"},
                  {"N", N},
                  {"face_code", in_units(r.discrete_part, bits)},
                  {"continuous", in_units(r.continuous_part + N * std::numbers::ln2 * dim, bits)},
                  {"total", in_units(coding_entropy(d, N), bits)}}
                 .dump()
          << '\n';
    } else if (maxent_cmd->parsed()) {
      if (format == "csv") {
        out << "K,value\n";
        for (int k = 2; k <= K; ++k)
          out << k << ',' << csv_number(in_units(maxent_over_faces(k, N).value, bits)) << '\n';
      } else {
        const MaxEntSolution s = maxent_over_faces(K, N);
        out << Json{{"K", K},
                    {"N", N},
                    {"units", bits ? "bits" : "nats"},
                    {"g", s.g},
                    {"value", in_units(s.value, bits)},
                    {"laguerre_value", in_units(laguerre_maxent_value(K, N), bits)}}
                   .dump()
            << '\n';
      }
    } else if (kl_cmd->parsed()) {
      const auto p = load_distribution(read_json(in_path, io), n, seed, tol);
      const auto q = load_distribution(read_json(in2_path, io), n, seed + 1, tol);
      const double kl = in_units(kl_divergence(p, q), bits);
      // JSON has no infinity; report it as a string.
      out << Json{{"units", bits ? "bits" : "nats"},
                  {"kl", std::isinf(kl) ? Json("inf") : Json(kl)}}
                 .dump()
          << '\n';
    } else if (mi_cmd->parsed()) {
      const Joint joint = io::joint_from_json(read_json(in_path, io));
      out << Json{{"units", bits ? "bits" : "nats"},
                  {"mi", in_units(mutual_information(joint), bits)}}
                 .dump()
          << '\n';
    } else if (fsa_cmd->parsed()) {
      run_fsa(verb, in_path, in2_path, out_path, string_path, tol, io);
    } else if (fig_cmd->parsed()) {
      if (fig_name == "entmax-curve")
        fig_entmax_curve(out, alpha, t_min, t_max, points);
      else if (fig_name == "maxent-vs-K")
        fig_maxent_vs_k(out, k_max, n_max, bits);
      else
        fig_rectify_density(out, z, sigma, points);
    }
  } catch (const Error& e) {
    err << name(e.kind()) << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace mixedsimplex::cli

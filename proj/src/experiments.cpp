#include "qchaos/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qchaos/chaosdiag.hpp"
#include "qchaos/concentration.hpp"
#include "qchaos/dqc1.hpp"
#include "qchaos/kickedtop.hpp"
#include "qchaos/rmt.hpp"
#include "qchaos/tomography.hpp"

namespace qchaos::experiments {

namespace {

using nlohmann::json;

int getInt(const json& params, const std::string& name) {
  if (!params.contains(name))
    throw ConfigError("missing required parameter: " + name);
  if (!params[name].is_number_integer())
    throw ConfigError("parameter " + name + " must be an integer");
  return params[name].get<int>();
}

double getNum(const json& params, const std::string& name) {
  if (!params.contains(name))
    throw ConfigError("missing required parameter: " + name);
  if (!params[name].is_number())
    throw ConfigError("parameter " + name + " must be a number");
  return params[name].get<double>();
}

std::string getStr(const json& params, const std::string& name) {
  if (!params.contains(name))
    throw ConfigError("missing required parameter: " + name);
  if (!params[name].is_string())
    throw ConfigError("parameter " + name + " must be a string");
  return params[name].get<std::string>();
}

int optInt(const json& params, const std::string& name, int fallback) {
  return params.contains(name) ? getInt(params, name) : fallback;
}

double optNum(const json& params, const std::string& name, double fallback) {
  return params.contains(name) ? getNum(params, name) : fallback;
}

std::string optStr(const json& params, const std::string& name,
                   const std::string& fallback) {
  return params.contains(name) ? getStr(params, name) : fallback;
}

std::vector<double> linearGrid(double lo, double hi, int count) {
  if (count < 1) throw ConfigError("grid count must be positive");
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i)
    g[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return g;
}

std::vector<int> geometricGrid(int n_max, int points) {
  std::vector<int> g;
  if (points < 1 || n_max < 1) throw ConfigError("grid count must be positive");
  for (int i = 0; i < points; ++i) {
    const double f = points == 1 ? 1.0 : double(i) / (points - 1);
    const int n = std::max(1, int(std::lround(std::pow(double(n_max), f))));
    if (g.empty() || n > g.back()) g.push_back(n);
  }
  if (g.back() != n_max) g.push_back(n_max);
  return g;
}

concentration::SphereSampler parseSampler(const std::string& s) {
  if (s == "uniform") return concentration::SphereSampler::uniform;
  if (s == "lipschitz") return concentration::SphereSampler::lipschitz;
  throw ConfigError("parameter sampler must be \"uniform\" or \"lipschitz\"");
}

tomography::UnitaryPolicy buildPolicy(const json& params, int dim) {
  const std::string kind = getStr(params, "policy");
  if (kind == "haar_each_step") return tomography::haarEachStep(dim);
  if (kind == "repeated_haar") return tomography::repeatedHaar(dim);
  if (kind == "diagonal_fixed_basis")
    return tomography::diagonalFixedBasis(dim);
  if (kind == "repeated_floquet")
    return tomography::repeatedFloquet(dim, getNum(params, "kappa0"));
  if (kind == "hybrid")
    return tomography::hybridPolicy(
        tomography::tomographyFloquet(dim, getNum(params, "kappa0_eig")),
        tomography::tomographyFloquet(dim, getNum(params, "kappa0_vec")));
  throw ConfigError("unknown policy: " + kind);
}

ResultTable runOtocExact(const json& params) {
  const int nqubits = getInt(params, "nqubits");
  const double kappa0 = getNum(params, "kappa0");
  const int n_max = getInt(params, "n_max");
  ResultTable t;
  t.columns = {"n", "otoc"};
  for (int n = 1; n <= n_max; ++n)
    t.rows.push_back({double(n), chaosdiag::otocExactSmall(nqubits, kappa0, n)});
  return t;
}

ResultTable runOtocScan(const json& params) {
  const int nqubits = getInt(params, "nqubits");
  const int n = getInt(params, "n");
  const auto grid = linearGrid(getNum(params, "kappa0_min"),
                               getNum(params, "kappa0_max"),
                               getInt(params, "kappa0_count"));
  ResultTable t;
  t.columns = {"kappa0", "otoc"};
  for (double k : grid)
    t.rows.push_back({k, chaosdiag::otocExactSmall(nqubits, k, n)});
  return t;
}

ResultTable runEchoAveraged(const json& params) {
  const int nqubits = getInt(params, "nqubits");
  const double kappa0 = getNum(params, "kappa0");
  const double delta = getNum(params, "delta_kappa0");
  const int n_max = getInt(params, "n_max");
  const auto series =
      chaosdiag::echoAveraged(nqubits, kappa0, kappa0 + delta, n_max);
  ResultTable t;
  t.columns = {"n", "fidelity"};
  for (size_t i = 0; i < series.times.size(); ++i)
    t.rows.push_back({double(series.times[i]), series.values[i]});
  return t;
}

ResultTable runEchoState(const json& params) {
  const int nqubits = getInt(params, "nqubits");
  const double kappa0 = getNum(params, "kappa0");
  const double delta = getNum(params, "delta_kappa0");
  const int n_max = getInt(params, "n_max");
  const std::string state = getStr(params, "state");
  chaosdiag::EchoInput which;
  if (state == "zero") {
    which = chaosdiag::EchoInput::ZeroString;
  } else if (state == "plus_y") {
    which = chaosdiag::EchoInput::PlusYString;
  } else {
    throw ConfigError("parameter state must be \"zero\" or \"plus_y\"");
  }
  const Vec psi0 = chaosdiag::echoInputState(which, nqubits);
  const auto series =
      chaosdiag::echoState(nqubits, psi0, kappa0, kappa0 + delta, n_max);
  ResultTable t;
  t.columns = {"n", "fidelity"};
  for (size_t i = 0; i < series.times.size(); ++i)
    t.rows.push_back({double(series.times[i]), series.values[i]});
  return t;
}

ResultTable runTomographyFidelity(const json& params, std::uint64_t seed) {
  const int dim = getInt(params, "dim");
  const int trials = getInt(params, "trials");
  const int n_steps = getInt(params, "n_steps");
  const double sigma_scale = getNum(params, "sigma_scale");
  const std::string positivity = optStr(params, "positivity", "metric");
  tomography::PositivityMode mode;
  if (positivity == "metric") {
    mode = tomography::PositivityMode::MetricProjection;
  } else if (positivity == "clip") {
    mode = tomography::PositivityMode::ClipRenormalize;
  } else {
    throw ConfigError("parameter positivity must be \"metric\" or \"clip\"");
  }
  const auto policy = buildPolicy(params, dim);

  const core::SpinSystem spin = core::spinOperators(dim - 1);
  const core::OperatorBasis basis = core::hermitianBasis(dim);
  const double sigma = sigma_scale * spin.jz.norm();
  const core::RngStream root(seed);

  ResultTable t;
  t.columns = {"trial", "fidelity", "rank"};
  for (int k = 0; k < trials; ++k) {
    core::RngStream rng = root.child(k);
    const Vec psi = core::randomPureState(dim, rng);
    const auto seq = tomography::generateSequence(policy, n_steps, rng);
    const RMat obs = tomography::evolveObservables(spin.jz, seq, basis);
    const auto ens = tomography::simulateRecordPure(psi, obs, sigma, rng);
    const auto est = tomography::estimateState(ens, std::nullopt, mode);
    const auto spec = tomography::covarianceSpectrum(obs, sigma);
    t.rows.push_back({double(k), est.fidelity, double(spec.rank)});
    if (trials >= 10 && (k + 1) % (trials / 10) == 0)
      std::fprintf(stderr, "tomography-fidelity: trial %d/%d\n", k + 1, trials);
  }
  return t;
}

ResultTable runTomographyInfo(const json& params, std::uint64_t seed) {
  const int dim = getInt(params, "dim");
  const int n_steps = getInt(params, "n_steps");
  const double sigma = getNum(params, "sigma");
  const int points = optInt(params, "points", 12);
  const auto policy = buildPolicy(params, dim);

  const core::SpinSystem spin = core::spinOperators(dim - 1);
  const core::OperatorBasis basis = core::hermitianBasis(dim);
  core::RngStream rng(seed);
  const auto seq = tomography::generateSequence(policy, n_steps, rng);
  const RMat obs = tomography::evolveObservables(spin.jz, seq, basis);

  ResultTable t;
  t.columns = {"n", "fisher_information", "entropy", "rank"};
  for (int n : geometricGrid(n_steps, points)) {
    const auto spec = tomography::covarianceSpectrum(obs.topRows(n), sigma);
    t.rows.push_back({double(n), spec.fisher_info, spec.shannon_entropy,
                      double(spec.rank)});
    std::fprintf(stderr, "tomography-info: n = %d done\n", n);
  }
  return t;
}

ResultTable runRmtCompare(const json& params, std::uint64_t seed) {
  const int dim = getInt(params, "dim");
  const int n_steps = getInt(params, "n_steps");
  const auto mp = rmt::marchenkoPastur(dim, n_steps);
  core::RngStream rng(seed);
  const auto eigs = rmt::sampleWishart(dim, n_steps, rng);

  ResultTable t;
  t.columns = {"lambda", "empirical_cdf", "mp_cdf"};
  for (size_t i = 0; i < eigs.size(); ++i) {
    const double lambda = eigs[i] / n_steps;
    t.rows.push_back(
        {lambda, double(i + 1) / double(eigs.size()), rmt::mpCdf(mp, lambda)});
  }
  return t;
}

ResultTable runDqc1Trace(const json& params, std::uint64_t seed) {
  const int nqubits = getInt(params, "nqubits");
  const double kappa0 = getNum(params, "kappa0");
  const int n_max = getInt(params, "n_max");
  const long shots = optInt(params, "shots", 0);
  const double alpha = optNum(params, "alpha", 1.0);

  kickedtop::KickedTopParams ktp;
  ktp.two_j = nqubits;
  ktp.kappa0 = kappa0;
  const core::Unitary u = kickedtop::floquet(ktp);
  const auto state = dqc1::maximallyMixed();
  const core::RngStream root(seed);

  ResultTable t;
  t.columns = {"n", "p0", "re", "im", "std_error"};
  Mat un = Mat::Identity(u.m.rows(), u.m.cols());
  for (int n = 1; n <= n_max; ++n) {
    un = un * u.m;
    const core::Unitary power = core::makeUnitary(un);
    core::RngStream rng = root.child(n);
    const auto res = shots > 0
                         ? dqc1::dqc1TraceShots(power, state, shots, rng, alpha)
                         : dqc1::dqc1Trace(power, state, alpha);
    t.rows.push_back(
        {double(n), res.p0, res.re_estimate, res.im_estimate, res.std_error});
  }
  return t;
}

ResultTable runDqc1Otoc(const json& params, std::uint64_t seed) {
  const int nqubits = getInt(params, "nqubits");
  const double kappa0 = getNum(params, "kappa0");
  const int n_max = getInt(params, "n_max");
  const long shots = optInt(params, "shots", 0);
  const double alpha = optNum(params, "alpha", 1.0);

  kickedtop::KickedTopParams ktp;
  ktp.two_j = nqubits;
  ktp.kappa0 = kappa0;
  const core::Unitary u = kickedtop::floquet(ktp);
  const core::SpinSystem spin = core::spinOperators(nqubits);
  const core::Unitary parity =
      core::makeUnitary(kickedtop::rotationPi(spin, kickedtop::Axis::X));
  const auto state = dqc1::maximallyMixed();
  const core::RngStream root(seed);

  ResultTable t;
  t.columns = {"n", "otoc_re", "otoc_im", "std_error"};
  Mat un = Mat::Identity(u.m.rows(), u.m.cols());
  for (int n = 1; n <= n_max; ++n) {
    un = un * u.m;
    const core::Unitary power = core::makeUnitary(un);
    core::RngStream rng = root.child(n);
    const auto res =
        shots > 0 ? dqc1::dqc1OtocShots(parity, parity, power, state, shots,
                                        rng, alpha)
                  : dqc1::dqc1Otoc(parity, parity, power, state, alpha);
    t.rows.push_back(
        {double(n), res.re_estimate, res.im_estimate, res.std_error});
  }
  return t;
}

ResultTable runDqc1Fidelity(const json& params, std::uint64_t seed) {
  const int dim = getInt(params, "dim");
  const auto grid = linearGrid(getNum(params, "p_min"), getNum(params, "p_max"),
                               getInt(params, "p_count"));
  const int trials = optInt(params, "trials", 0);

  core::RngStream rng(seed);
  ResultTable t;
  t.columns = {"p", "fidelity"};
  if (trials == 0) {
    for (double p : grid)
      t.rows.push_back({p, dqc1::dqc1GateFidelityHaar({p, dim})});
    return t;
  }
  const core::Unitary u = core::haarUnitary(dim, rng);
  std::vector<Vec> states;
  states.reserve(trials);
  for (int k = 0; k < trials; ++k) {
    core::RngStream child = rng.child(k);
    states.push_back(core::randomPureState(dim, child));
  }
  for (double p : grid) {
    double acc = 0.0;
    for (const Vec& psi : states)
      acc += dqc1::dqc1GateFidelity(u, dqc1::DepolarizingChannel{p, dim}, psi);
    t.rows.push_back({p, acc / trials});
  }
  return t;
}

ResultTable runConcentrationSphere(const json& params, std::uint64_t seed) {
  const int n = getInt(params, "n");
  const std::string f_tag = getStr(params, "f");
  const auto sampler = parseSampler(getStr(params, "sampler"));
  const int trials = getInt(params, "trials");
  const auto grid = linearGrid(getNum(params, "eps_min"),
                               getNum(params, "eps_max"),
                               getInt(params, "eps_count"));
  core::RngStream rng(seed);
  ResultTable t;
  t.columns = {"epsilon", "probability", "levy_bound"};
  for (double eps : grid) {
    const double prob =
        concentration::empiricalDeviation(f_tag, sampler, n, eps, trials, rng);
    t.rows.push_back({eps, prob, concentration::levyBound(n, eps)});
  }
  return t;
}

ResultTable runBipartiteTypicality(const json& params, std::uint64_t seed) {
  const int dim_a = getInt(params, "dim_a");
  const int dim_b = getInt(params, "dim_b");
  const int trials = getInt(params, "trials");
  const auto sampler = parseSampler(optStr(params, "sampler", "uniform"));
  core::RngStream rng(seed);
  const auto stats =
      concentration::bipartiteTypicality(dim_a, dim_b, trials, sampler, rng);
  ResultTable t;
  t.columns = {"mean_entropy", "std_entropy", "mean_trace_distance",
               "fannes_violations", "page_entropy"};
  t.rows.push_back({stats.mean_entropy, stats.std_entropy,
                    stats.mean_trace_distance, double(stats.fannes_violations),
                    concentration::pageEntropy(dim_a, dim_b)});
  return t;
}

ResultTable runQuasispecies(const json& params, std::uint64_t seed) {
  const int n = getInt(params, "n");
  const double mutation = getNum(params, "mutation");
  const int trials = getInt(params, "trials");
  if (mutation < 0.0 || mutation > 1.0)
    throw ConfigError("parameter mutation must lie in [0, 1]");

  core::RngStream rng(seed);
  RVec a(n);
  for (int i = 0; i < n; ++i) a(i) = 1.0 + rng.uniform();
  const Eigen::MatrixXd q =
      (1.0 - mutation) * Eigen::MatrixXd::Identity(n, n) +
      (mutation / n) * Eigen::MatrixXd::Ones(n, n);
  const auto system = concentration::quasispeciesEquilibrium(a, q);
  const auto fc =
      concentration::randomFitnessConcentration(system, trials, rng);

  ResultTable t;
  t.columns = {"lambda_max", "mean_deviation", "median_deviation",
               "q90_deviation", "max_deviation"};
  t.rows.push_back(
      {system.lambda_max, fc.mean_deviation, fc.median, fc.q90,
       fc.max_deviation});
  return t;
}

}  // namespace

const std::vector<ExperimentInfo>& experimentRegistry() {
  static const std::vector<ExperimentInfo> registry = {
      {"otoc-exact",
       "closed-form infinite-temperature OTOC of the small kicked tops",
       {{"nqubits", "integer"}, {"kappa0", "number"}, {"n_max", "integer"}}},
      {"otoc-scan",
       "closed-form OTOC at fixed step across a kick-strength grid",
       {{"nqubits", "integer"},
        {"n", "integer"},
        {"kappa0_min", "number"},
        {"kappa0_max", "number"},
        {"kappa0_count", "integer"}}},
      {"echo-averaged",
       "state-averaged fidelity decay under imperfect reversal",
       {{"nqubits", "integer"},
        {"kappa0", "number"},
        {"delta_kappa0", "number"},
        {"n_max", "integer"}}},
      {"echo-state",
       "fidelity decay of a chosen product state",
       {{"nqubits", "integer"},
        {"kappa0", "number"},
        {"delta_kappa0", "number"},
        {"n_max", "integer"},
        {"state", "string"}}},
      {"tomography-fidelity",
       "reconstruction fidelity of random pure states from weak records",
       {{"dim", "integer"},
        {"policy", "string"},
        {"trials", "integer"},
        {"n_steps", "integer"},
        {"sigma_scale", "number"},
        {"positivity", "string", false},
        {"kappa0", "number", false},
        {"kappa0_eig", "number", false},
        {"kappa0_vec", "number", false}}},
      {"tomography-info",
       "Fisher information and eigenvalue entropy of the measurement record",
       {{"dim", "integer"},
        {"policy", "string"},
        {"n_steps", "integer"},
        {"sigma", "number"},
        {"points", "integer", false},
        {"kappa0", "number", false},
        {"kappa0_eig", "number", false},
        {"kappa0_vec", "number", false}}},
      {"rmt-compare",
       "sampled Wishart spectrum against the Marchenko-Pastur law",
       {{"dim", "integer"}, {"n_steps", "integer"}}},
      {"dqc1-trace",
       "one-clean-qubit trace readout of kicked-top powers",
       {{"nqubits", "integer"},
        {"kappa0", "number"},
        {"n_max", "integer"},
        {"shots", "integer", false},
        {"alpha", "number", false}}},
      {"dqc1-otoc",
       "one-clean-qubit OTOC of the parity kick under the top",
       {{"nqubits", "integer"},
        {"kappa0", "number"},
        {"n_max", "integer"},
        {"shots", "integer", false},
        {"alpha", "number", false}}},
      {"dqc1-fidelity",
       "gate fidelity under depolarizing noise, pointwise or Haar averaged",
       {{"dim", "integer"},
        {"p_min", "number"},
        {"p_max", "number"},
        {"p_count", "integer"},
        {"trials", "integer", false}}},
      {"concentration-sphere",
       "empirical deviation probabilities on the sphere with the Levy bound",
       {{"n", "integer"},
        {"f", "string"},
        {"sampler", "string"},
        {"eps_min", "number"},
        {"eps_max", "number"},
        {"eps_count", "integer"},
        {"trials", "integer"}}},
      {"bipartite-typicality",
       "entanglement typicality of random bipartite pure states",
       {{"dim_a", "integer"},
        {"dim_b", "integer"},
        {"trials", "integer"},
        {"sampler", "string", false}}},
      {"quasispecies",
       "replication-mutation equilibrium and fitness concentration",
       {{"n", "integer"},
        {"mutation", "number"},
        {"trials", "integer"}}},
  };
  return registry;
}

void validateConfig(const json& config) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  if (!config.contains("experiment"))
    throw ConfigError("missing required field: experiment");
  if (!config["experiment"].is_string())
    throw ConfigError("field experiment must be a string");
  const std::string name = config["experiment"].get<std::string>();

  const ExperimentInfo* info = nullptr;
  for (const auto& e : experimentRegistry())
    if (e.name == name) info = &e;
  if (!info) throw ConfigError("unknown experiment: " + name);

  if (!config.contains("seed"))
    throw ConfigError("missing required field: seed");
  if (!config["seed"].is_number_integer())
    throw ConfigError("field seed must be an integer");
  if (config.contains("format")) {
    const auto& f = config["format"];
    if (!f.is_string() ||
        (f.get<std::string>() != "csv" && f.get<std::string>() != "json"))
      throw ConfigError("field format must be \"csv\" or \"json\"");
  }
  if (config.contains("output") && !config["output"].is_string())
    throw ConfigError("field output must be a string");

  if (!config.contains("params"))
    throw ConfigError("missing required field: params");
  const json& params = config["params"];
  if (!params.is_object()) throw ConfigError("field params must be an object");

  for (const auto& p : info->params) {
    if (!params.contains(p.name)) {
      if (p.required)
        throw ConfigError("missing required parameter: " + p.name);
      continue;
    }
    const json& v = params[p.name];
    const bool ok = (p.type == "integer" && v.is_number_integer()) ||
                    (p.type == "number" && v.is_number()) ||
                    (p.type == "string" && v.is_string());
    if (!ok)
      throw ConfigError("parameter " + p.name + " must be of type " + p.type);
  }
  for (const auto& [key, value] : params.items()) {
    (void)value;
    bool known = false;
    for (const auto& p : info->params)
      if (p.name == key) known = true;
    if (!known) throw ConfigError("unknown parameter: " + key);
  }
}

ResultTable runExperiment(const json& config) {
  validateConfig(config);
  const std::string name = config["experiment"].get<std::string>();
  const auto seed =
      static_cast<std::uint64_t>(config["seed"].get<long long>());
  const json& params = config["params"];

  ResultTable t;
  if (name == "otoc-exact") {
    t = runOtocExact(params);
  } else if (name == "otoc-scan") {
    t = runOtocScan(params);
  } else if (name == "echo-averaged") {
    t = runEchoAveraged(params);
  } else if (name == "echo-state") {
    t = runEchoState(params);
  } else if (name == "tomography-fidelity") {
    t = runTomographyFidelity(params, seed);
  } else if (name == "tomography-info") {
    t = runTomographyInfo(params, seed);
  } else if (name == "rmt-compare") {
    t = runRmtCompare(params, seed);
  } else if (name == "dqc1-trace") {
    t = runDqc1Trace(params, seed);
  } else if (name == "dqc1-otoc") {
    t = runDqc1Otoc(params, seed);
  } else if (name == "dqc1-fidelity") {
    t = runDqc1Fidelity(params, seed);
  } else if (name == "concentration-sphere") {
    t = runConcentrationSphere(params, seed);
  } else if (name == "bipartite-typicality") {
    t = runBipartiteTypicality(params, seed);
  } else if (name == "quasispecies") {
    t = runQuasispecies(params, seed);
  } else {
    throw ConfigError("unknown experiment: " + name);
  }
  t.metadata = json{{"config", config}, {"version", kVersion}};
  return t;
}

namespace {

std::string formatCell(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void writeCsv(const ResultTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  for (size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::runtime_error("row arity does not match header");
    for (size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << formatCell(row[c]);
    out << "\n";
  }
  if (!out.good())
    throw std::runtime_error("write failed for output file: " + path);
}

void writeJsonFile(const ResultTable& table, const std::string& path) {
  for (const auto& row : table.rows)
    if (row.size() != table.columns.size())
      throw std::runtime_error("row arity does not match header");
  json doc;
  doc["metadata"] = table.metadata.is_null() ? json::object() : table.metadata;
  doc["columns"] = table.columns;
  doc["rows"] = table.rows;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  out << doc.dump(2) << "\n";
  if (!out.good())
    throw std::runtime_error("write failed for output file: " + path);
}

}  // namespace

void emitTable(const ResultTable& table, const std::string& path,
               const std::string& format) {
  if (format == "csv") {
    writeCsv(table, path);
  } else if (format == "json") {
    writeJsonFile(table, path);
  } else {
    throw ConfigError("field format must be \"csv\" or \"json\"");
  }
}

ResultTable readCsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  ResultTable table;
  std::string line;
  if (!std::getline(in, line)) return table;
  std::stringstream header(line);
  std::string cell;
  while (std::getline(header, cell, ',')) table.columns.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream fields(line);
    while (std::getline(fields, cell, ','))
      row.push_back(std::strtod(cell.c_str(), nullptr));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace qchaos::experiments

#include "dunklfp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "dunklfp/analytic.hpp"
#include "dunklfp/errors.hpp"
#include "dunklfp/format.hpp"

namespace dunklfp::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' expects a number, got '" + v + "'");
  }
}

long long parse_integer(const std::string& key, const std::string& v, long long min) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    if (x < min) throw ConfigError("key '" + key + "' must be at least " + std::to_string(min));
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' expects an integer, got '" + v + "'");
  }
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Opens the requested file, or hands back stdout.
// Buffers a command's output so a failing command leaves nothing half written.
class Sink {
 public:
  explicit Sink(const OutputTarget& target) {
    if (target.path && !target.path->empty()) {
      file_ = std::make_unique<std::ofstream>(*target.path, std::ios::binary);
      if (!*file_) throw std::ios_base::failure("cannot open '" + *target.path + "' for writing");
    }
  }
  std::ostream& stream() { return buffer_; }
  void finish() {
    std::ostream& out = file_ ? *file_ : std::cout;
    out << buffer_.str();
    out.flush();
    if (!out) throw std::ios_base::failure("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostringstream buffer_;
};

template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const std::ios_base::failure& e) {
    log << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::map<std::string, std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (value.empty()) throw ConfigError("key '" + key + "' has no value");
    if (!seen.emplace(key, value).second) throw ConfigError("key '" + key + "' given twice");
  }

  const auto required = [&](const std::string& key) -> const std::string& {
    const auto it = seen.find(key);
    if (it == seen.end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
  };

  const std::string problem = lower(required("problem"));
  if (problem == "centrifugal") {
    cfg.problem = Problem::Centrifugal;
    cfg.kind = DerivativeKind::CH;
    cfg.xmax = 10.0;
  } else if (problem == "oscillator") {
    cfg.problem = Problem::Oscillator;
    cfg.kind = DerivativeKind::TP;
  } else {
    throw ConfigError("key 'problem' must be centrifugal or oscillator, got '" + problem + "'");
  }
  cfg.parity = parse_parity(lower(required("parity")));
  cfg.a = parse_real("a", required("a"));

  for (const auto& [key, value] : seen) {
    if (key == "problem" || key == "parity" || key == "a") continue;
    if (key == "kind") {
      try {
        cfg.kind = parse_kind(value);
      } catch (const KindError&) {
        throw ConfigError("key 'kind' must be yang, dunkl, ch or tp, got '" + value + "'");
      }
    } else if (key == "sigma") {
      cfg.sigma = parse_real(key, value);
    } else if (key == "mu") {
      cfg.mu = parse_real(key, value);
    } else if (key == "gamma") {
      cfg.gamma = parse_real(key, value);
    } else if (key == "n") {
      cfg.n = static_cast<int>(parse_integer(key, value, 0));
    } else if (key == "lambda") {
      cfg.lambda = parse_real(key, value);
    } else if (key == "grid") {
      cfg.grid = static_cast<std::size_t>(parse_integer(key, value, 3));
    } else if (key == "xmax") {
      cfg.xmax = parse_real(key, value);
      if (!(cfg.xmax > 0.0)) throw ConfigError("key 'xmax' must be positive");
    } else if (key == "dt") {
      cfg.dt = parse_real(key, value);
      if (!(*cfg.dt > 0.0)) throw ConfigError("key 'dt' must be positive");
    } else if (key == "steps") {
      cfg.steps = static_cast<std::size_t>(parse_integer(key, value, 1));
    } else if (key == "scheme") {
      try {
        cfg.scheme = numeric::parse_scheme(lower(value));
      } catch (const ConfigError&) {
        throw ConfigError("key 'scheme' must be cn or be, got '" + value + "'");
      }
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "save_every") {
      cfg.save_every = static_cast<std::size_t>(parse_integer(key, value, 1));
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  (void)config_params(cfg);
  (void)config_superpotential(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  return parse_config(in);
}

DunklParams config_params(const RunConfig& cfg) {
  switch (cfg.kind) {
    case DerivativeKind::Yang: return make_params(cfg.kind, 0.0, cfg.mu, cfg.gamma);
    case DerivativeKind::Dunkl: return make_params(cfg.kind, cfg.mu, cfg.mu, cfg.gamma);
    case DerivativeKind::CH: return make_params(cfg.kind, cfg.sigma, cfg.mu, cfg.gamma);
    case DerivativeKind::TP: return make_params(cfg.kind, cfg.sigma, cfg.mu, cfg.gamma);
  }
  throw ConfigError("unknown kind");
}

Superpotential config_superpotential(const RunConfig& cfg) {
  return cfg.problem == Problem::Centrifugal ? Superpotential::centrifugal(cfg.a)
                                             : Superpotential::oscillator_centrifugal(cfg.a);
}

int cmd_table(int which, int m, Parity parity, const OutputTarget& target, std::ostream& log) {
  return guarded(log, [&] {
    if (which != 1 && which != 2) throw ConfigError("table must be 1 or 2");
    Sink sink(target);
    std::ostream& out = sink.stream();
    if (which == 1) {
      out << "mu,sigma,even,odd\n";
      for (const auto& row : analytic::generate_table1()) {
        out << format_number(row.mu) << ',' << format_number(row.sigma) << ',' << analytic::render(row.even)
            << ',' << analytic::render(row.odd) << '\n';
      }
    } else {
      out << "n,lambda,power,beta,alpha,c0,c1,c2,c3,descriptor\n";
      for (const auto& row : analytic::generate_table2(m, parity)) {
        const auto& d = row.descriptor;
        out << row.n << ',' << format_number(d.lambda) << ',' << format_number(d.power) << ','
            << format_number(d.beta) << ',' << format_number(d.alpha);
        for (std::size_t j = 0; j < 4; ++j) {
          out << ',';
          if (j < row.coefficients.size()) out << analytic::render_alpha_polynomial(row.coefficients[j]);
        }
        out << ',' << analytic::render(d) << '\n';
      }
    }
    sink.finish();
    return static_cast<int>(kSuccess);
  });
}

int cmd_figure(const std::string& which, double xmax, int points, bool negative, const OutputTarget& target,
               std::ostream& log) {
  return guarded(log, [&] {
    const analytic::FigureData data = analytic::figure_data(analytic::parse_figure(which), xmax, points, negative);
    Sink sink(target);
    std::ostream& out = sink.stream();
    for (std::size_t i = 0; i < data.header.size(); ++i) out << (i ? "," : "") << data.header[i];
    out << '\n';
    for (const auto& row : data.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_real(row[i]);
      out << '\n';
    }
    sink.finish();
    return static_cast<int>(kSuccess);
  });
}

int cmd_verify(const std::string& suite, const verify::Options& opts, std::ostream& log) {
  return guarded(log, [&] {
    const bool all = suite == "all";
    if (!all && suite != "algebra" && suite != "analytic" && suite != "numeric") {
      throw ConfigError("unknown suite '" + suite + "' (expected algebra, analytic, numeric or all)");
    }
    bool ok = true;
    if (all || suite == "algebra") ok = verify::print_results("algebra", verify::run_algebra(opts), log) && ok;
    if (all || suite == "analytic") ok = verify::print_results("analytic", verify::run_analytic(opts), log) && ok;
    if (all || suite == "numeric") ok = verify::print_results("numeric", verify::run_numeric(opts), log) && ok;
    log << (ok ? "all checks passed\n" : "verification FAILED\n");
    return static_cast<int>(ok ? kSuccess : kVerificationFailed);
  });
}

namespace {

struct Experiment {
  RunConfig cfg;
  numeric::SectorOperator op;
  ParityFunction initial;
  double lambda;
};

Experiment prepare(const std::string& path, const Overrides& over) {
  RunConfig cfg = load_config(path);
  if (over.grid) cfg.grid = *over.grid;
  if (over.xmax) cfg.xmax = *over.xmax;
  if (over.output) cfg.output = *over.output;
  const DunklParams params = config_params(cfg);
  auto op = numeric::build_sector_operator(params, config_superpotential(cfg), cfg.parity,
                                           HalfLineGrid::with_extent(cfg.grid, cfg.xmax));
  ParityFunction initial;
  double lambda = 0.0;
  if (cfg.problem == Problem::Oscillator) {
    if (cfg.kind != DerivativeKind::TP) throw ConfigError("key 'kind' must be tp for the oscillator problem");
    const auto d = analytic::oscillator_solution(cfg.parity, cfg.a, params, cfg.n);
    initial = numeric::sample(op, [&](double x) { return analytic::eval_descriptor(d, x); });
    lambda = d.lambda;
  } else {
    if (!params.is_ch_family()) throw ConfigError("key 'kind' must be yang, dunkl or ch for the centrifugal problem");
    if (!(cfg.lambda > 0.0)) throw ConfigError("key 'lambda' must be positive for the centrifugal problem");
    const auto d = analytic::centrifugal_solution(cfg.parity, cfg.a, params.sigma(), cfg.mu, cfg.lambda);
    initial = numeric::sample(op, [&](double x) { return analytic::eval_descriptor(d, x); });
    lambda = d.lambda;
  }
  return {std::move(cfg), std::move(op), std::move(initial), lambda};
}

}  // namespace

int cmd_evolve(const std::string& config_path, const Overrides& over, std::ostream& log) {
  return guarded(log, [&] {
    Experiment ex = prepare(config_path, over);
    if (!ex.cfg.dt) throw ConfigError("missing required key 'dt'");
    if (!ex.cfg.steps) throw ConfigError("missing required key 'steps'");
    const auto traj = numeric::evolve(ex.op, ex.initial, *ex.cfg.dt, *ex.cfg.steps, ex.cfg.scheme, ex.cfg.save_every);
    const double measured = numeric::decay_rate(traj, ex.initial);

    const std::string path = ex.cfg.output.empty() ? "trajectory.csv" : ex.cfg.output;
    Sink sink(OutputTarget{path});
    numeric::write_trajectory_csv(traj, sink.stream());
    sink.finish();

    char buf[160];
    if (ex.lambda == 0.0) {
      std::snprintf(buf, sizeof buf, "lambda_measured=%.6g lambda_analytic=0 abs_error=%.3g", measured,
                    std::fabs(measured));
    } else {
      std::snprintf(buf, sizeof buf, "lambda_measured=%.9g lambda_analytic=%.9g rel_error=%.3g", measured,
                    ex.lambda, std::fabs(measured - ex.lambda) / ex.lambda);
    }
    log << buf << " (" << traj.times.size() << " samples written to " << path << ")\n";
    return static_cast<int>(kSuccess);
  });
}

int cmd_spectrum(const std::string& config_path, std::size_t k, const Overrides& over, std::ostream& log) {
  return guarded(log, [&] {
    Experiment ex = prepare(config_path, over);
    const auto pairs = numeric::lowest_eigenpairs(ex.op, k);
    Sink sink(OutputTarget{ex.cfg.output.empty() ? std::nullopt : std::optional<std::string>(ex.cfg.output)});
    std::ostream& out = sink.stream();
    out << "n,lambda_numeric,lambda_analytic\n";
    const bool tp = ex.cfg.kind == DerivativeKind::TP;
    const double spacing = 4.0 * (1.0 - parity_sign(ex.cfg.parity) * ex.cfg.gamma);
    for (std::size_t n = 0; n < pairs.size(); ++n) {
      out << n << ',' << format_real(pairs[n].lambda) << ',';
      if (tp) out << format_real(spacing * static_cast<double>(n));
      out << '\n';
    }
    sink.finish();
    return static_cast<int>(kSuccess);
  });
}

}  // namespace dunklfp::cli

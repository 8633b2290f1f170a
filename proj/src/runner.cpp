// Copyright 2026 The corrhss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "corrhss/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <json.hpp>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "corrhss/channels.hpp"
#include "corrhss/errors.hpp"
#include "corrhss/parallel.hpp"

namespace corrhss {
namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end)
    throw InvalidSpec("not a number: '" + text + "'");
  return v;
}

std::size_t parse_count(const std::string& text) {
  const std::string t = trim(text);
  std::size_t v = 0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end)
    throw InvalidSpec("not a non-negative integer: '" + text + "'");
  return v;
}

template <class T>
std::vector<T> as_list(const json& v) {
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

std::vector<double> angle_list(const json& v) {
  std::vector<double> out;
  for (const auto& item : v.is_array() ? v : json::array({v})) {
    if (item.is_number()) out.push_back(item.get<double>());
    else if (item.is_string()) out.push_back(parse_angle(item.get<std::string>()));
    else throw InvalidSpec("phi entries must be numbers or angle strings");
  }
  return out;
}

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool two_qubit_only(const BasisId& id) {
  return id.kind == BasisKind::bell || id.kind == BasisKind::hadamard ||
         id.kind == BasisKind::local;
}

std::vector<BasisId> catalog_ids(const ResolvedSweep& r, std::size_t n, std::size_t random_bases) {
  if (!r.bases.empty()) return r.bases;
  std::vector<BasisId> ids{{BasisKind::standard, 0}};
  if (r.command == Command::measure) {
    if (n == 2) {
      ids.push_back({BasisKind::bell, 0});
      ids.push_back({BasisKind::hadamard, 0});
      ids.push_back({BasisKind::local, 0});
    }
    for (std::size_t k = 0; k < random_bases; ++k)
      ids.push_back({BasisKind::random, static_cast<std::uint32_t>(k)});
  }
  return ids;
}

ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  ComplexMatrix x(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    x(r, r) = normal(gen);
    for (std::size_t c = r + 1; c < dim; ++c) {
      x(r, c) = complex(normal(gen), normal(gen));
      x(c, r) = std::conj(x(r, c));
    }
  }
  return x;
}

ReservoirModel check_model(ModelTag tag) { return audit_model(tag, AuditOptions{}); }

std::vector<double> sample_taus(ModelTag tag, std::size_t count, double step) {
  const double scale = tag == ModelTag::squeezed ? 0.1 : 1.0;
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = scale * step * static_cast<double>(k);
  return out;
}

constexpr ModelTag kAllModels[] = {ModelTag::dephasing, ModelTag::squeezed,
                                   ModelTag::depolarizing, ModelTag::ad};
constexpr ModelTag kUnitalModels[] = {ModelTag::dephasing, ModelTag::squeezed,
                                      ModelTag::depolarizing};

std::string tag_name(ModelTag t) { return ClosedFormId{t, ClosedFormBasis::standard}.str(); }

}  // namespace

ReservoirModel make_model(const SweepSpec& s) {
  ReservoirModel m;
  if (s.model == "dephasing") m = ColoredDephasing{s.nu};
  else if (s.model == "squeezed") m = SqueezedVacuumOhmic{s.alpha, s.s, s.r, s.theta_sq};
  else if (s.model == "depolarizing") m = ColoredDepolarizing{s.theta_dep};
  else if (s.model == "ad") m = LorentzianAmplitudeDamping{s.a};
  else throw InvalidSpec("unknown model '" + s.model + "'");
  validate(m);
  return m;
}

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dash = part.find('-');
    if (dash == std::string::npos) {
      out.push_back(parse_count(part));
    } else {
      const std::size_t lo = parse_count(part.substr(0, dash));
      const std::size_t hi = parse_count(part.substr(dash + 1));
      if (hi < lo || hi - lo > 64) throw InvalidSpec("bad qubit range '" + part + "'");
      for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
    }
  }
  if (out.empty()) throw InvalidSpec("empty qubit list");
  return out;
}

double parse_angle(const std::string& token) {
  std::string t = trim(token);
  const auto at = t.find("pi");
  if (at == std::string::npos) return parse_number(t);
  std::string head = trim(t.substr(0, at));
  std::string tail = trim(t.substr(at + 2));
  if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
  double mult = 1.0;
  if (head == "-") mult = -1.0;
  else if (head == "+") mult = 1.0;
  else if (!head.empty()) mult = parse_number(head);
  double div = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw InvalidSpec("bad angle '" + token + "'");
    div = parse_number(tail.substr(1));
    if (div == 0.0) throw InvalidSpec("bad angle '" + token + "'");
  }
  return mult * kPi / div;
}

SweepSpec spec_from_json(const std::string& text, SweepSpec s) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidSpec(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidSpec("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "model") s.model = v.get<std::string>();
      else if (key == "nu") s.nu = v.get<double>();
      else if (key == "alpha") s.alpha = v.get<double>();
      else if (key == "s") s.s = v.get<double>();
      else if (key == "r") s.r = v.get<double>();
      else if (key == "theta_sq") s.theta_sq = angle_list(v).at(0);
      else if (key == "theta_dep") s.theta_dep = v.get<double>();
      else if (key == "a") s.a = v.get<double>();
      else if (key == "n") s.n = v.is_string() ? parse_n_list(v.get<std::string>()) : as_list<std::size_t>(v);
      else if (key == "mu") s.mu = as_list<double>(v);
      else if (key == "tau_max") s.tau_max = v.get<double>();
      else if (key == "tau_step") s.tau_step = v.get<double>();
      else if (key == "tau_star") s.tau_star = v.get<double>();
      else if (key == "basis") s.basis = as_list<std::string>(v);
      else if (key == "phi") s.phi = angle_list(v);
      else if (key == "random_bases") s.random_bases = v.get<std::size_t>();
      else if (key == "max_qubits") s.max_qubits = v.get<std::size_t>();
      else if (key == "seed") s.seed = v.get<std::uint64_t>();
      else if (key == "threads") s.threads = v.get<std::size_t>();
      else if (key == "out") s.out = v.get<std::string>();
      else if (key == "comment") s.comment = v.get<std::string>();
      else if (key == "command") s.command = v.get<std::string>();
      else throw InvalidSpec("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw InvalidSpec(std::string("config has a field of the wrong type: ") + e.what());
  }
  return s;
}

ResolvedSweep resolve(const SweepSpec& s, Command command) {
  ResolvedSweep r;
  r.command = command;
  r.model = make_model(s);
  r.seed = s.seed;
  if (s.threads < 1 || s.threads > 256) throw InvalidSpec("threads must lie in [1, 256]");
  r.threads = s.threads;
  const bool squeezed = s.model == "squeezed";

  r.n = s.n;
  sort_unique(r.n);
  if (r.n.empty()) throw InvalidSpec("no qubit counts given");
  const std::size_t cap = command == Command::delta ? std::min(s.max_qubits, kMaxQubits) : kMaxQubits;
  if (s.max_qubits > kMaxQubits) throw InvalidSpec("max_qubits exceeds the hard cap of 10");
  for (std::size_t n : r.n) {
    if (n < 2 || n > cap)
      throw InvalidSpec("qubit count " + std::to_string(n) + " outside [2, " + std::to_string(cap) + "]");
    if (!is_unital(r.model) && n != 2)
      throw UnsupportedParameter("amplitude damping is defined for two qubits only");
  }

  r.mu = s.mu;
  sort_unique(r.mu);
  if (command != Command::delta) {
    if (r.mu.empty()) throw InvalidSpec("no mu values given");
    for (double mu : r.mu)
      if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("mu must lie in [0, 1]");
  }

  if (command == Command::delta) {
    if (!is_unital(r.model)) throw InvalidSpec("delta scans need a unital model");
    r.tau_star = s.tau_star.value_or(s.model == "dephasing" ? 1.62 : squeezed ? 0.2 : 1.6);
    if (!(r.tau_star >= 0.0) || !std::isfinite(r.tau_star)) throw DomainError("tau_star must be >= 0");
  } else {
    r.tau_grid = make_tau_grid(s.tau_max.value_or(squeezed ? 3.0 : 30.0),
                               s.tau_step.value_or(squeezed ? 0.001 : 0.01));
  }

  for (const auto& b : s.basis) {
    if (b == "random") {
      for (std::size_t k = 0; k < s.random_bases; ++k)
        r.bases.push_back({BasisKind::random, static_cast<std::uint32_t>(k)});
    } else {
      r.bases.push_back(BasisId::parse(b));
    }
  }
  sort_unique(r.bases);
  for (const auto& b : r.bases)
    for (std::size_t n : r.n)
      if (two_qubit_only(b) && n != 2)
        throw InvalidSpec("basis '" + b.str() + "' needs n = 2");
  if (s.random_bases > 4096) throw InvalidSpec("random_bases too large");

  r.phi = s.phi;
  for (double p : r.phi)
    if (!std::isfinite(p)) throw DomainError("phi must be finite");
  sort_unique(r.phi);
  if (r.phi.empty()) r.phi = command == Command::measure ? default_phi_grid() : std::vector<double>{kPi};
  return r;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  if (ec != std::errc()) throw ContractViolation("number formatting failed");
  return std::string(buf, ptr);
}

std::string csv_line(const Row& row) {
  std::string out = row.model;
  out += ',' + std::to_string(row.n) + ',';
  if (row.mu) out += format_number(*row.mu);
  out += ',';
  if (row.tau) out += format_number(*row.tau);
  out += ',' + row.basis + ',' + format_number(row.phi) + ',' + row.kind + ',' +
         format_number(row.value);
  return out;
}

void run_curve(const SweepSpec& spec, const RowSink& sink) {
  const ResolvedSweep r = resolve(spec, Command::curve);
  const std::string name(model_name(r.model));
  for (std::size_t n : r.n) {
    const auto ids = catalog_ids(r, n, spec.random_bases);
    // curves[family][mu], families in (basis, phi) order.
    std::vector<std::vector<HssCurve>> curves;
    std::vector<std::pair<BasisId, double>> families;
    for (const auto& id : ids) {
      const ComplexMatrix rot = basis_rotation(id, n, r.seed);
      for (double phi : r.phi) {
        const PhaseFamily family{n, rot, phi, id};
        curves.push_back(hss_curves(r.model, n, r.mu, family, r.tau_grid, r.threads));
        families.emplace_back(id, phi);
      }
    }
    for (std::size_t m = 0; m < r.mu.size(); ++m)
      for (std::size_t f = 0; f < families.size(); ++f)
        for (std::size_t k = 0; k < r.tau_grid.size(); ++k)
          sink(Row{name, n, r.mu[m], r.tau_grid[k], families[f].first.str(), families[f].second,
                   "hss", curves[f][m].values[k]});
  }
}

void run_measure(const SweepSpec& spec, const RowSink& sink) {
  const ResolvedSweep r = resolve(spec, Command::measure);
  const std::string name(model_name(r.model));
  for (std::size_t n : r.n) {
    const auto ids = catalog_ids(r, n, spec.random_bases);
    const auto catalog = make_catalog(ids, n, r.seed);
    for (double mu : r.mu) {
      const MeasureResult m =
          nm_measure(CorrelatedChannelSpec{r.model, n, mu}, catalog, r.phi, r.tau_grid, r.threads);
      sink(Row{name, n, mu, std::nullopt, m.basis.str(), m.phi, "n_hss", m.value});
    }
  }
}

void run_delta(const SweepSpec& spec, const RowSink& sink) {
  const ResolvedSweep r = resolve(spec, Command::delta);
  const std::string name(model_name(r.model));
  for (std::size_t n : r.n) {
    for (const auto& id : catalog_ids(r, n, spec.random_bases)) {
      const ComplexMatrix rot = basis_rotation(id, n, r.seed);
      for (double phi : r.phi) {
        const PhaseFamily family{n, rot, phi, id};
        sink(Row{name, n, std::nullopt, r.tau_star, id.str(), phi, "delta",
                 delta_range(r.model, n, r.tau_star, family)});
      }
    }
  }
}

std::vector<Row> collect(void (*runner)(const SweepSpec&, const RowSink&), const SweepSpec& spec) {
  std::vector<Row> rows;
  runner(spec, [&](const Row& row) { rows.push_back(row); });
  return rows;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return !c.binding || c.pass; });
}

std::string audit_csv(const std::vector<AuditRow>& rows) {
  std::string out = "formula_id,basis,max_abs_dev,grid_points,binding,pass\n";
  for (const auto& r : rows) {
    out += r.formula_id + ',' + r.basis + ',' + format_number(r.max_abs_dev) + ',' +
           std::to_string(r.grid_points) + ',' + (r.binding ? "true" : "false") + ',' +
           (r.pass ? "true" : "false") + '\n';
  }
  return out;
}

ValidationReport run_validate(const ValidateOptions& o) {
  ValidationReport report;
  auto add = [&](std::string name, bool binding, double dev, double tol, std::string detail = {}) {
    report.checks.push_back({std::move(name), binding, dev <= tol, dev, std::move(detail)});
  };

  if (o.run_audit) {
    AuditOptions ao;
    ao.threads = o.threads;
    report.audit = formula_audit(ao);
    for (const auto& row : report.audit)
      report.checks.push_back({"audit " + row.formula_id, row.binding, row.pass, row.max_abs_dev,
                               std::to_string(row.grid_points) + " points"});
  }

  if (o.run_hss_checks) {
    const double mus[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (ModelTag tag : kAllModels) {
      const ReservoirModel model = check_model(tag);
      const ClosedFormId id{tag, ClosedFormBasis::standard};
      const PhaseFamily family = make_family({BasisKind::standard, 0}, 2, kPi);
      double dev = 0.0;
      for (double mu : mus)
        for (double tau : audit_tau_grid(tag))
          dev = std::max(dev, std::abs(hss_value(CorrelatedChannelSpec{model, 2, mu}, family, tau) -
                                       hss_closed_form(id, model, mu, tau, kPi)));
      add("closed form vs hss_value " + id.str(), true, dev, 1e-10);
    }
    // Initial value and derivative oracle across models, bases and sizes.
    for (ModelTag tag : kAllModels) {
      const ReservoirModel model = check_model(tag);
      double dev0 = 0.0, dev_fd = 0.0;
      for (std::size_t n = 2; n <= (tag == ModelTag::ad ? 2u : 3u); ++n) {
        std::vector<BasisId> ids{{BasisKind::standard, 0}, {BasisKind::random, 0}};
        if (n == 2) ids.insert(ids.end(), {{BasisKind::bell, 0}, {BasisKind::hadamard, 0}});
        const double expect = std::sqrt(std::ldexp(1.0, static_cast<int>(n)) - 1) /
                              std::ldexp(1.0, static_cast<int>(n));
        for (const auto& id : ids)
          for (double phi : {0.0, 1.0, kPi})
            for (double mu : {0.0, 0.5, 1.0}) {
              const PhaseFamily f = make_family(id, n, phi, 7);
              const CorrelatedChannelSpec spec{model, n, mu};
              dev0 = std::max(dev0, std::abs(hss_value(spec, f, 0.0) - expect));
              for (double tau : sample_taus(tag, 4, 0.7))
                dev_fd = std::max(dev_fd, std::abs(hss_value(spec, f, tau) -
                                                   finite_difference_hss(spec, f, tau)));
            }
      }
      add("initial value " + tag_name(tag), true, dev0, 1e-10);
      add("finite difference " + tag_name(tag), true, dev_fd, 1e-6);
    }
  }

  if (o.run_equivalence) {
    std::mt19937_64 gen(20260101);
    for (ModelTag tag : kUnitalModels) {
      const ReservoirModel model = check_model(tag);
      double dev_fast = 0.0, dev_table = 0.0;
      for (std::size_t n = 2; n <= 4; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        for (int trial = 0; trial < 10; ++trial) {
          const ComplexMatrix x = random_hermitian(dim, gen);
          const double mu = (trial % 3) * 0.5;
          for (double tau : sample_taus(tag, 10, 0.5)) {
            const CorrelatedChannelSpec spec{model, n, mu};
            const ComplexMatrix ref = dense_reference_apply(spec, tau, x);
            const auto dist = joint_probs(single_use_probs(model, tau).probs, mu, n);
            ComplexMatrix fast = apply_pauli_channel(dist, x, ApplyPath::fast);
            ComplexMatrix table = CorrelatedChannel(spec, tau).apply(x);
            fast(0, 0) += o.fast_path_perturbation;
            table(0, 0) += o.fast_path_perturbation;
            dev_fast = std::max(dev_fast, max_abs_diff(fast, ref));
            dev_table = std::max(dev_table, max_abs_diff(table, ref));
          }
        }
      }
      add("fast path vs dense Kraus " + tag_name(tag), true, dev_fast, 1e-12);
      add("transfer table vs dense Kraus " + tag_name(tag), true, dev_table, 1e-12);
    }
    const ReservoirModel ad = check_model(ModelTag::ad);
    double dev_ad = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix x = random_hermitian(4, gen);
      const double mu = (trial % 3) * 0.5;
      for (double tau : sample_taus(ModelTag::ad, 10, 0.5)) {
        const CorrelatedChannelSpec spec{ad, 2, mu};
        ComplexMatrix fast = CorrelatedChannel(spec, tau).apply(x);
        fast(0, 0) += o.fast_path_perturbation;
        dev_ad = std::max(dev_ad, max_abs_diff(fast, dense_reference_apply(spec, tau, x)));
      }
    }
    add("entrywise damping vs dense Kraus " + tag_name(ModelTag::ad), true, dev_ad, 1e-12);
  }

  if (o.run_channel_checks) {
    for (ModelTag tag : kAllModels) {
      const ReservoirModel model = check_model(tag);
      double neg = 0.0, tp = 0.0, unital = 0.0;
      for (double mu : {0.0, 0.5, 1.0}) {
        for (double tau : sample_taus(tag, 20, 0.25)) {
          const CorrelatedChannelSpec spec{model, 2, mu};
          const ComplexMatrix choi = choi_matrix(spec, tau);
          neg = std::max(neg, -hermitian_eigenvalues(choi).front());
          const CorrelatedChannel ch(spec, tau);
          for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) {
              ComplexMatrix e(4);
              e(j, k) = 1.0;
              const complex tr = ch.apply(e).trace();
              tp = std::max(tp, std::abs(tr - (j == k ? 1.0 : 0.0)));
            }
          unital = std::max(unital, max_abs_diff(ch.apply(ComplexMatrix::identity(4)),
                                                 ComplexMatrix::identity(4)));
        }
      }
      add("complete positivity " + tag_name(tag), true, neg, 1e-9);
      add("trace preservation " + tag_name(tag), true, tp, 1e-12);
      if (tag != ModelTag::ad) add("unitality " + tag_name(tag), true, unital, 1e-12);
    }
    const double defect = max_abs_diff(apply_corr_ad_g(0.5, 0.5, ComplexMatrix::identity(4)),
                                       ComplexMatrix::identity(4));
    report.checks.push_back({"amplitude damping not unital at G = 0.5", true, defect > 1e-3, defect,
                             "identity image differs from identity"});
  }
  return report;
}

}  // namespace corrhss

#include "treerep/suite.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cmath>
#include <sstream>

#include "treerep/identities.hpp"
#include "treerep/representations.hpp"

namespace treerep {

const std::vector<std::string>& Tolerances::names() {
  static const std::vector<std::string> list{"identity", "unitary", "rank", "kernel", "resolvent", "bound", "lipschitz"};
  return list;
}

double& Tolerances::at(const std::string& name) {
  if (name == "identity") return identity;
  if (name == "unitary") return unitary;
  if (name == "rank") return rank;
  if (name == "kernel") return kernel;
  if (name == "resolvent") return resolvent;
  if (name == "bound") return bound;
  if (name == "lipschitz") return lipschitz;
  throw ConfigError("unknown tolerance `" + name + "`");
}

void validate(const SuiteConfig& config) {
  for (double t : config.t_grid) {
    if (!(t >= 0.0 && t < 1.0)) {
      throw ConfigError("t = " + format_real(t) +
                        " is outside [0, 1) for the rho~_t grid; use --limit-t to compare against the t = 1 limit");
    }
  }
  for (double t : config.limit_grid) {
    if (!(t > 0.0 && t <= 1.0)) throw ConfigError("limit grid value " + format_real(t) + " is outside (0, 1]");
  }
  for (auto z : config.z_grid) {
    if (!(std::abs(z) < 1.0)) throw ConfigError("z = " + format_complex(z) + " needs |z| < 1");
  }
  Tolerances copy = config.tolerances;
  for (const auto& name : Tolerances::names()) {
    if (!(copy.at(name) > 0.0)) throw ConfigError("tolerance " + name + " must be positive");
  }
}

GroupClosure resolve_group(const Tree& tree, const std::string& group_spec, std::size_t auto_limit) {
  if (group_spec == "auto") {
    if (tree.vertex_count() > auto_limit) {
      throw ConfigError("full group search limited to N <= " + std::to_string(auto_limit) + " (tree has " +
                        std::to_string(tree.vertex_count()) + " vertices); suggest a generator file via --group");
    }
    return full_automorphism_group(tree);
  }
  if (group_spec == "trivial") return close_group(tree, {});
  try {
    return close_group(tree, load_automorphism_file(tree, group_spec));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

bool SuiteReport::pass() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

nlohmann::ordered_json SuiteReport::to_json(bool include_timings) const {
  nlohmann::ordered_json j;
  j["schema"] = kSchema;
  j["tree"] = tree_spec;
  j["vertex_count"] = vertex_count;
  j["origin"] = origin;
  j["group_size"] = group_size;
  j["pass"] = pass();
  auto& list = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json rec;
    rec["check"] = r.check;
    rec["parameter"] = r.parameter;
    rec["g"] = r.g ? nlohmann::ordered_json(*r.g) : nlohmann::ordered_json(nullptr);
    rec["measured"] = r.measured;
    rec["bound"] = r.bound ? nlohmann::ordered_json(*r.bound) : nlohmann::ordered_json(nullptr);
    rec["pass"] = r.pass;
    list.push_back(std::move(rec));
  }
  if (include_timings) {
    auto& t = j["timings"] = nlohmann::ordered_json::object();
    for (const auto& [name, seconds] : timings) t[name] = seconds;
  }
  return j;
}

namespace {

// Largest per-element value together with the index of the element attaining it.
struct Worst {
  double value = 0.0;
  std::optional<std::size_t> g;
};

class Recorder {
 public:
  explicit Recorder(SuiteReport& report) : report_(report) {}

  // Passes when measured <= bound.
  void at_most(std::string check, std::string parameter, double measured, double bound,
               std::optional<std::size_t> g = std::nullopt) {
    report_.records.push_back({std::move(check), std::move(parameter), measured, bound, measured <= bound, g});
  }
  void at_most(std::string check, std::string parameter, const Worst& worst, double bound) {
    at_most(std::move(check), std::move(parameter), worst.value, bound, worst.g);
  }
  void strictly_below(std::string check, std::string parameter, double measured, double bound) {
    report_.records.push_back({std::move(check), std::move(parameter), measured, bound, measured < bound, {}});
  }
  void info(std::string check, std::string parameter, double measured) {
    report_.records.push_back({std::move(check), std::move(parameter), measured, std::nullopt, true, {}});
  }

  template <typename Fn>
  void timed(const std::string& family, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    report_.timings.emplace_back(family, elapsed.count());
  }

 private:
  SuiteReport& report_;
};

// Shortest round-trip text, so labels read `t=0.9` rather than 17 digits.
std::string shortest(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string shortest(std::complex<double> z) {
  if (z.imag() == 0.0) return shortest(z.real());
  std::string im = shortest(z.imag()) + "i";
  if (z.real() == 0.0) return im;
  return shortest(z.real()) + (z.imag() < 0.0 ? "" : "+") + im;
}

std::string param_t(double t) { return "t=" + shortest(t); }
std::string param_z(std::complex<double> z) { return "z=" + shortest(z); }

// Runs fn(k) for k in [0, count) across threads; exceptions are re-thrown in order.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  std::vector<std::string> failures(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      fn(static_cast<std::size_t>(k));
    } catch (const std::exception& e) {
      failures[k] = e.what();
    }
  }
  for (const auto& f : failures)
    if (!f.empty()) throw Error(f);
}

Worst max_of(const std::vector<double>& values) {
  if (values.empty()) return {};
  const auto it = std::max_element(values.begin(), values.end());
  return {*it, static_cast<std::size_t>(it - values.begin())};
}

}  // namespace

SuiteReport run_check(const SuiteConfig& config) {
  validate(config);
  Tree tree = [&] {
    try {
      return tree_from_spec(config.tree_spec);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }();
  if (!tree.contains(config.origin)) throw ConfigError("origin " + std::to_string(config.origin) + " out of range");
  const GroupClosure group = resolve_group(tree, config.group_spec, config.auto_group_limit);
  const RootedTree rooted(tree, config.origin);
  const std::vector<Automorphism>& elements = group.elements;
  const Tolerances& tol = config.tolerances;
  const std::size_t n = tree.vertex_count();

  SuiteReport report;
  report.tree_spec = config.tree_spec;
  report.vertex_count = n;
  report.origin = config.origin;
  report.group_size = elements.size();
  Recorder rec(report);

  std::vector<std::size_t> displacement(elements.size());
  for (std::size_t k = 0; k < elements.size(); ++k) {
    displacement[k] = distance(tree, rooted.origin(), elements[k](rooted.origin()));
  }

  rec.timed("operators", [&] {
    const auto p1 = identities::shift_identities(rooted);
    rec.at_most("shift.PPstar_eq_Q_plus_p0", "", p1.p_pstar, tol.identity);
    rec.at_most("shift.P_plus_Pstar_eq_S", "", p1.p_plus_pstar, tol.identity);
    rec.at_most("operators.nilpotency", "", identities::nilpotency(rooted), 0.0);
    rec.at_most("operators.adjoint_consistency", "", identities::adjoint_consistency(rooted, config.seed),
                tol.identity * static_cast<double>(std::max<std::size_t>(n, 1)));
    const auto l2 = identities::coboundary_identities(rooted);
    rec.at_most("coboundary.one_minus_P_eq_bF_plus_p0", "", l2.one_minus_p, tol.identity);
    rec.at_most("coboundary.one_minus_P_Fstar_eq_b", "", l2.one_minus_p_fstar, tol.identity);
    rec.at_most("coboundary.resolvent_b_eq_Fstar", "", l2.resolvent_b, tol.identity);
    rec.at_most("F.FstarF_eq_1_minus_p0", "", l2.fstar_f, tol.identity);
    rec.at_most("F.FFstar_eq_1", "", l2.f_fstar, tol.identity);

    std::vector<std::complex<double>> zs = config.z_grid;
    if (std::find(zs.begin(), zs.end(), std::complex<double>(1.0)) == zs.end()) zs.emplace_back(1.0);
    for (auto z : zs) {
      const auto l1 = identities::resolvent_identities(rooted, z);
      rec.at_most("resolvent.path_sum", param_z(z), l1.path_sum, tol.resolvent);
      rec.at_most("resolvent.neumann_sum", param_z(z), l1.neumann, tol.resolvent);
      rec.at_most("resolvent.inverse", param_z(z), l1.inverse, tol.resolvent);
    }
  });

  rec.timed("gram", [&] {
    for (double t : config.t_grid) {
      rec.at_most("gram.TTstar", param_t(t), identities::deformation_gram(rooted, t), tol.identity);
      std::vector<double> gaps(elements.size());
      parallel_for(elements.size(), [&](std::size_t k) { gaps[k] = identities::commutator(rooted, t, elements[k]); });
      rec.at_most("gram.commutes_with_pi0", param_t(t), max_of(gaps), tol.identity);
    }
  });

  rec.timed("group", [&] {
    const auto pairs = identities::homomorphism_pairs(elements.size());
    const auto laws = identities::group_laws(tree, elements, pairs);
    rec.at_most("group.pi0_homomorphism", "", laws.pi0_homomorphism, tol.unitary);
    rec.at_most("group.pi1_homomorphism", "", laws.pi1_homomorphism, tol.unitary);
    rec.at_most("group.pi0_unitary", "", laws.pi0_unitary, tol.unitary);
    rec.at_most("group.pi1_unitary", "", laws.pi1_unitary, tol.unitary);
    rec.at_most("group.S_Q_commute_with_pi0", "", laws.s_q_commute, tol.identity);
    rec.at_most("group.b_equivariance", "", laws.b_equivariance, tol.identity);
  });

  rec.timed("rho_z", [&] {
    for (auto z : config.z_grid) {
      const DeformedRep rep = DeformedRep::rho_z(rooted, z);
      std::vector<DefectReport> defects(elements.size());
      parallel_for(elements.size(), [&](std::size_t k) { defects[k] = defect(rep, elements[k]); });
      double range = 0.0, translated = 0.0, rank_excess = -1e300, cross = 0.0, norm_excess = -1e300;
      for (std::size_t k = 0; k < defects.size(); ++k) {
        const auto& d = defects[k];
        range = std::max(range, d.range_leak);
        translated = std::max(translated, d.translated_leak);
        rank_excess = std::max(rank_excess, static_cast<double>(d.rank) - static_cast<double>(displacement[k] + 1));
        cross = std::max(cross, *d.crosscheck_residual);
        norm_excess = std::max(norm_excess, d.defect_norm - *d.norm_bound);
      }
      rec.at_most("rho_z.defect_range_in_path_span", param_z(z), range, tol.unitary);
      rec.at_most("rho_z.translated_defect_in_path_span", param_z(z), translated, tol.unitary);
      rec.at_most("rho_z.rank_minus_path_length", param_z(z), rank_excess, 0.0);
      rec.at_most("rho_z.crosscheck_P_minus_Pprime", param_z(z), cross, tol.unitary);
      rec.at_most("rho_z.defect_norm_minus_bound", param_z(z), norm_excess, tol.bound);
      const auto cert = uniform_bound_certificate(rooted, elements, z, tol.bound);
      rec.at_most("rho_z.uniform_bound", param_z(z), cert.max_norm, cert.bound + tol.bound, cert.argmax);
      if (cert.dense_crosscheck) rec.at_most("rho_z.norm_dense_crosscheck", param_z(z), *cert.dense_crosscheck, 1e-8);
    }
  });

  rec.timed("rho_tilde", [&] {
    const auto pairs = identities::homomorphism_pairs(elements.size());
    const DenseMatrix one = DenseMatrix::identity(n);
    for (double t : config.t_grid) {
      const DeformedRep rep = DeformedRep::rho_tilde(rooted, t);
      std::vector<DenseMatrix> mats(elements.size());
      std::vector<double> unitarity(elements.size()), equivalence(elements.size()), leak(elements.size());
      parallel_for(elements.size(), [&](std::size_t k) {
        mats[k] = rep.matrix(elements[k]);
        unitarity[k] = max_abs_diff(mats[k].adjoint() * mats[k], one);
        const auto eq = equivalence_check(rooted, elements[k], t);
        equivalence[k] = std::max(eq.residual, eq.u_inverse_residual);
        leak[k] = defect(rep, elements[k]).range_leak;
      });
      std::vector<double> hom(pairs.size());
      parallel_for(pairs.size(), [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        hom[k] = max_abs_diff(rep.matrix(elements[i] * elements[j]), mats[i] * mats[j]);
      });
      rec.at_most("rho_tilde.unitary", param_t(t), max_of(unitarity), tol.unitary);
      rec.at_most("rho_tilde.u_conjugation_equivalence", param_t(t), max_of(equivalence), tol.unitary);
      rec.at_most("rho_tilde.homomorphism", param_t(t), max_of(hom), tol.unitary);
      rec.at_most("rho_tilde.defect_range_in_path_span", param_t(t), max_of(leak), tol.unitary);
    }
  });

  rec.timed("limit", [&] {
    std::vector<double> limit_ts = config.limit_grid;
    std::sort(limit_ts.begin(), limit_ts.end());
    const double tol_zero = tol.unitary;
    double worst_step = -1e300;
    double gap_at_last = 0.0;
    bool any_moving = false;
    for (std::size_t k = 0; k < elements.size(); ++k) {
      if (displacement[k] > 6) continue;
      const auto curve = homotopy_curve(rooted, elements[k], limit_ts);
      const bool constant = std::all_of(curve.begin(), curve.end(),
                                        [&](const CurvePoint& p) { return p.dist_to_limit <= tol_zero; });
      if (!constant) {
        any_moving = true;
        for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
          worst_step = std::max(worst_step, curve[i + 1].dist_to_limit - curve[i].dist_to_limit);
        }
      }
      if (!curve.empty()) gap_at_last = std::max(gap_at_last, curve.back().dist_to_limit);
    }
    if (any_moving && limit_ts.size() > 1) rec.strictly_below("limit.strictly_decreasing", "", worst_step, 0.0);
    if (!limit_ts.empty()) rec.info("limit.distance_to_limit", param_t(limit_ts.back()), gap_at_last);

    std::vector<double> ts = config.t_grid;
    for (double t : limit_ts)
      if (t < 1.0) ts.push_back(t);
    double sphere = 0.0;
    double closed_form = 0.0;
    for (std::size_t k = 0; k < elements.size(); ++k) {
      const std::size_t d = displacement[k];
      for (double t : ts) {
        const auto image = rho_tilde(rooted, elements[k], t, VertexVector::basis(rooted.origin()));
        sphere = std::max(sphere, std::abs(norm(image) - 1.0));
        double sum = std::pow(t, 2.0 * static_cast<double>(d));
        for (std::size_t i = 0; i < d; ++i) sum += (1.0 - t * t) * std::pow(t, 2.0 * static_cast<double>(i));
        closed_form = std::max(closed_form, std::abs(sum - 1.0));
      }
    }
    rec.at_most("limit.origin_image_unit_norm", "", sphere, tol.identity);
    rec.at_most("limit.origin_image_closed_form", "", closed_form, tol.identity);
  });

  rec.timed("endpoints", [&] {
    const DenseMatrix f = materialize(op_F(rooted));
    const DenseMatrix p0 = materialize(op_p0(rooted));
    std::vector<double> ts;
    for (double t : config.t_grid)
      if (t <= 0.99) ts.push_back(t);
    std::sort(ts.begin(), ts.end());
    std::vector<double> at_zero(elements.size()), at_one(elements.size()), lipschitz(elements.size());
    parallel_for(elements.size(), [&](std::size_t k) {
      const Automorphism& g = elements[k];
      const DenseMatrix pi = materialize(op_pi0(tree, g));
      at_zero[k] = max_abs_diff(DeformedRep::rho_tilde(rooted, 0.0).matrix(g), pi);
      const DenseMatrix dense_route = f.adjoint() * materialize(op_pi1(tree, g)) * f + p0;
      DenseMatrix vector_route(n, n);
      for (Vertex x = 0; x < n; ++x)
        for (const auto& [i, c] : rho_tilde_limit(rooted, g, VertexVector::basis(x))) vector_route(i, x) = c;
      at_one[k] = max_abs_diff(vector_route, dense_route);
      double ratio = 0.0;
      for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const double step = ts[i + 1] - ts[i];
        if (step <= 0.0) continue;
        const double moved = spectral_norm(DeformedRep::rho_tilde(rooted, ts[i + 1]).matrix(g) -
                                           DeformedRep::rho_tilde(rooted, ts[i]).matrix(g));
        ratio = std::max(ratio, moved / step);
      }
      lipschitz[k] = ratio;
    });
    rec.at_most("endpoint.rho_tilde_0_eq_pi0", "", max_of(at_zero), 0.0);
    rec.at_most("endpoint.rho_tilde_1_eq_Fstar_pi1_F_plus_p0", "", max_of(at_one), tol.unitary);
    rec.at_most("endpoint.lipschitz_on_grid", "", max_of(lipschitz), tol.lipschitz);
  });

  rec.timed("kernels", [&] {
    const KernelMatrix dist = distance_kernel(tree);
    rec.at_most("kernel.distance_cnd", "", cnd_check(dist, config.seed).max_form, tol.kernel);
    for (double t : config.t_grid) {
      if (!(t > 0.0 && t < 1.0)) continue;
      const auto gram = gram_identity_check(rooted, t);
      rec.at_most("kernel.gram_identity", param_t(t), std::max(gram.operator_residual, gram.gram_residual), tol.kernel);
      // Reported as the negated smallest eigenvalue so that "at most tol" reads as PSD.
      rec.at_most("kernel.exp_psd", param_t(t), -psd_check(exp_kernel(tree, t)).min_eigenvalue, tol.kernel);
    }
  });

  if (n <= config.cocycle_limit) {
    rec.timed("cocycle", [&] {
      std::vector<EdgeVector> table(n * n);
      double norm_gap = 0.0, coboundary = 0.0, closed = 0.0;
      for (Vertex x = 0; x < n; ++x) {
        for (Vertex y = 0; y < n; ++y) {
          table[x * n + y] = cocycle(tree, x, y).value;
          const auto c = cocycle_check(rooted, x, y);
          norm_gap = std::max(norm_gap, std::abs(c.norm_squared - static_cast<double>(c.distance)));
          coboundary = std::max(coboundary, c.coboundary_residual);
          closed = std::max(closed, c.closed_form_residual);
        }
      }
      double chasles = 0.0;
      for (Vertex x = 0; x < n; ++x)
        for (Vertex z = 0; z < n; ++z)
          for (Vertex y : path(tree, x, z))
            chasles = std::max(chasles, max_abs_diff(table[x * n + z], table[x * n + y] + table[y * n + z]));
      std::vector<double> equivariance(elements.size());
      parallel_for(elements.size(), [&](std::size_t k) {
        const Automorphism& g = elements[k];
        const auto pi1 = op_pi1(tree, g);
        double worst = 0.0;
        for (Vertex x = 0; x < n; ++x)
          for (Vertex y = 0; y < n; ++y)
            worst = std::max(worst, max_abs_diff(table[g(x) * n + g(y)], pi1.apply(table[x * n + y])));
        equivariance[k] = worst;
      });
      rec.at_most("cocycle.norm_squared_eq_distance", "", norm_gap, 0.0);
      rec.at_most("cocycle.coboundary", "", coboundary, tol.identity);
      rec.at_most("cocycle.closed_form", "", closed, tol.identity);
      rec.at_most("cocycle.chasles", "", chasles, tol.identity);
      rec.at_most("cocycle.equivariance", "", max_of(equivariance), tol.identity);
    });
  }

  return report;
}

std::string summarize_report(const nlohmann::ordered_json& report) {
  std::ostringstream out;
  std::size_t passed = 0, failed = 0;
  for (const auto& r : report.at("checks")) (r.at("pass").get<bool>() ? passed : failed)++;
  out << "tree " << report.at("tree").get<std::string>() << "  N=" << report.at("vertex_count").get<std::size_t>()
      << "  |G|=" << report.at("group_size").get<std::size_t>() << "  origin=" << report.at("origin").get<std::size_t>()
      << "\n";
  for (const auto& r : report.at("checks")) {
    const bool ok = r.at("pass").get<bool>();
    out << (r.at("bound").is_null() ? "info" : ok ? "pass" : "FAIL") << "  " << r.at("check").get<std::string>();
    const auto param = r.at("parameter").get<std::string>();
    if (!param.empty()) out << " [" << param << "]";
    if (!r.at("g").is_null()) out << " g#" << r.at("g").get<std::size_t>();
    out << "  " << (r.at("measured").is_null() ? std::string("nan") : shortest(r.at("measured").get<double>()));
    if (!r.at("bound").is_null()) out << " <= " << shortest(r.at("bound").get<double>());
    out << "\n";
  }
  out << passed << " passed, " << failed << " failed\n";
  return out.str();
}

namespace {

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current, ',')) {
    if (current.empty()) throw ConfigError("empty entry in grid `" + text + "`");
    parts.push_back(current);
  }
  if (parts.empty()) throw ConfigError("empty grid");
  return parts;
}

}  // namespace

std::vector<double> parse_real_grid(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split_commas(text)) {
    const Complex c = [&] {
      try {
        return parse_complex(part);
      } catch (const Error&) {
        throw ConfigError("bad number `" + part + "`");
      }
    }();
    if (c.imag() != 0.0) throw ConfigError("expected a real number, got `" + part + "`");
    out.push_back(c.real());
  }
  return out;
}

std::vector<std::complex<double>> parse_complex_grid(const std::string& text) {
  std::vector<std::complex<double>> out;
  for (const auto& part : split_commas(text)) {
    try {
      out.push_back(parse_complex(part));
    } catch (const Error&) {
      throw ConfigError("bad complex number `" + part + "`");
    }
  }
  return out;
}

}  // namespace treerep

#include "mildflow/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>

#include "mildflow/duhamel.hpp"
#include "mildflow/errors.hpp"
#include "mildflow/field_io.hpp"
#include "mildflow/norms.hpp"
#include "mildflow/operators.hpp"
#include "mildflow/picard.hpp"
#include "mildflow/transform.hpp"
#include "mildflow/windows.hpp"

namespace mildflow {

namespace {

std::string num(double v) { return format_number(v); }
std::string num(int v) { return std::to_string(v); }
std::string num(std::size_t v) { return std::to_string(v); }
std::string flag(bool b) { return b ? "1" : "0"; }

double hs_lebesgue(const ScalarField& f, double s, double p) {
    return lebesgue_norm(s == 0.0 ? f : fractional_laplacian(f, s), p);
}

}  // namespace

CorpusSpec corpus_spec(const ExperimentConfig& cfg, double amplitude) {
    CorpusSpec spec;
    spec.family = parse_family(cfg.family);
    spec.mode = cfg.mode;
    spec.width = cfg.width;
    spec.band_min = cfg.band_min;
    spec.band_max = cfg.band_max;
    spec.exponent = cfg.exponent;
    spec.amplitude = amplitude;
    spec.count = cfg.count;
    spec.seed = cfg.seed;
    return spec;
}

SpectralGrid sweep_grid(const ExperimentConfig& cfg, int level) {
    return SpectralGrid(cfg.dim, cfg.n << level, cfg.L);
}

CsvTable run_corpus(const ExperimentConfig& cfg) {
    cfg.validate();
    const SpectralGrid grid = sweep_grid(cfg, 0);
    const auto fields = generate_corpus(corpus_spec(cfg, cfg.amplitude.front()), grid);
    if (!cfg.dump.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cfg.dump, ec);
        if (ec) throw IoError("cannot create dump directory '" + cfg.dump + "'");
    }
    CsvTable t({"field", "family", "n", "l2_norm", "max_divergence", "max_coeff", "hermitian_defect"});
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const VectorField& u = fields[i];
        double herm = 0.0;
        for (const ScalarField& c : u.components()) herm = std::max(herm, hermitian_defect(c));
        t.add_row({num(i), cfg.family, num(grid.n()), num(spectral_l2_norm(u)), num(max_divergence(u)),
                   num(u.max_abs_coeff()), num(herm)});
        if (!cfg.dump.empty()) {
            save_spectral_dump(cfg.dump + "/field_" + std::to_string(i) + ".txt", u);
        }
    }
    return t;
}

CsvTable run_norms_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    for (double q : cfg.q) {
        for (double r : cfg.r) {
            for (double s : cfg.s) NormIndex{q, r, s}.validate(cfg.dim);
        }
    }
    for (double q : cfg.q) {
        for (double s : cfg.s) {
            for (double qt : cfg.q_tilde) check_embedding_window(cfg.dim, s, q, qt);
        }
    }
    CsvTable t({"n", "field", "kind", "q", "r", "s", "value"});
    const HeatTimeGrid times = HeatTimeGrid::for_grid(sweep_grid(cfg, 0));
    for (int level = 0; level < cfg.levels; ++level) {
        const SpectralGrid grid = sweep_grid(cfg, level);
        const auto fields = generate_corpus(corpus_spec(cfg, cfg.amplitude.front()), grid);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            for (double q : cfg.q) {
                for (double r : cfg.r) {
                    for (double s : cfg.s) {
                        const double v = sobolev_lorentz_norm(fields[i], NormIndex{q, r, s});
                        t.add_row({num(grid.n()), num(i), "sobolev_lorentz", num(q), num(r), num(s), num(v)});
                    }
                }
            }
            for (double q : cfg.q) {
                for (double s : cfg.s) {
                    for (double qt : cfg.q_tilde) {
                        const double reg = s - cfg.dim * (1.0 / q - 1.0 / qt);
                        const double v = besov_norm_heat(fields[i], reg, kInfinity, qt, s, times);
                        t.add_row({num(grid.n()), num(i), "besov", num(qt), "inf", num(reg), num(v)});
                    }
                }
            }
        }
    }
    return t;
}

CsvTable run_embedding_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    for (double q : cfg.q) {
        for (double s : cfg.s) {
            for (double qt : cfg.q_tilde) check_embedding_window(cfg.dim, s, q, qt);
            for (double r : cfg.r) NormIndex{q, r, s}.validate(cfg.dim);
        }
    }
    CsvTable t({"n", "field", "q", "r", "s", "q_tilde", "heat_sup", "sobolev_lorentz", "ratio_heat",
                "besov", "ratio_besov", "degenerate"});
    const HeatTimeGrid times = HeatTimeGrid::for_grid(sweep_grid(cfg, 0));
    for (int level = 0; level < cfg.levels; ++level) {
        const SpectralGrid grid = sweep_grid(cfg, level);
        const auto fields = generate_corpus(corpus_spec(cfg, cfg.amplitude.front()), grid);
        for (double q : cfg.q) {
            for (double r : cfg.r) {
                for (double s : cfg.s) {
                    for (double qt : cfg.q_tilde) {
                        const double alpha = cfg.dim * (1.0 / q - 1.0 / qt);
                        double max_heat = 0.0, max_besov = 0.0;
                        std::size_t degenerate = 0;
                        for (std::size_t i = 0; i < fields.size(); ++i) {
                            const double rhs = sobolev_lorentz_norm(fields[i], NormIndex{q, r, s});
                            const double heat =
                                weighted_heat_sup(fields[i], NormIndex{qt, 1.0, s}, alpha, times).value;
                            const double besov = besov_norm_heat(fields[i], s - alpha, kInfinity, qt, s, times);
                            const bool deg = !(rhs > 0.0);
                            const double rh = deg ? 0.0 : heat / rhs;
                            const double rb = deg ? 0.0 : besov / rhs;
                            if (deg) {
                                ++degenerate;
                            } else {
                                max_heat = std::max(max_heat, rh);
                                max_besov = std::max(max_besov, rb);
                            }
                            t.add_row({num(grid.n()), num(i), num(q), num(r), num(s), num(qt), num(heat),
                                       num(rhs), num(rh), num(besov), num(rb), flag(deg)});
                        }
                        t.add_row({num(grid.n()), "max", num(q), num(r), num(s), num(qt), "", "",
                                   num(max_heat), "", num(max_besov), num(degenerate)});
                    }
                }
            }
        }
    }
    return t;
}

CsvTable run_product_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    for (double s : cfg.s) {
        for (double p : cfg.p) {
            for (double q : cfg.q) check_product_window(cfg.dim, p, q, s);
        }
    }
    CsvTable t({"n", "pair", "s", "p", "q", "r", "product", "factors", "ratio", "degenerate"});
    for (int level = 0; level < cfg.levels; ++level) {
        const SpectralGrid grid = sweep_grid(cfg, level);
        const auto fields = generate_corpus(corpus_spec(cfg, cfg.amplitude.front()), grid);
        std::vector<std::vector<double>> samples;
        for (const VectorField& u : fields) samples.push_back(to_physical(u[0]));
        for (double s : cfg.s) {
            for (double p : cfg.p) {
                for (double q : cfg.q) {
                    const double r = product_output_exponent(cfg.dim, p, q, s);
                    double best = 0.0;
                    std::size_t degenerate = 0;
                    for (std::size_t i = 0; i < fields.size(); ++i) {
                        const std::size_t j = (i + 1) % fields.size();
                        const ScalarField& u = fields[i][0];
                        const ScalarField& v = fields[j][0];
                        std::vector<double> prod(samples[i].size());
                        for (std::size_t x = 0; x < prod.size(); ++x) prod[x] = samples[i][x] * samples[j][x];
                        const double lhs = hs_lebesgue(from_physical(grid, prod), s, r);
                        const double rhs = hs_lebesgue(u, s, p) * hs_lebesgue(v, s, q);
                        const bool deg = !(rhs > 0.0) || !u.has_zero_mean() || !v.has_zero_mean();
                        const double ratio = deg ? 0.0 : lhs / rhs;
                        if (deg) {
                            ++degenerate;
                        } else {
                            best = std::max(best, ratio);
                        }
                        t.add_row({num(grid.n()), num(i), num(s), num(p), num(q), num(r), num(lhs), num(rhs),
                                   num(ratio), flag(deg)});
                    }
                    t.add_row({num(grid.n()), "max", num(s), num(p), num(q), num(r), "", "", num(best),
                               num(degenerate)});
                }
            }
        }
    }
    return t;
}

CsvTable run_bilinear_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    for (double q : cfg.q) {
        for (double s : cfg.s) {
            for (double qt : cfg.q_tilde) check_bilinear_window(cfg.dim, s, q, qt);
        }
    }
    const SpectralGrid grid = sweep_grid(cfg, 0);
    const auto fields = generate_corpus(corpus_spec(cfg, cfg.amplitude.front()), grid);
    CsvTable t({"T", "pair", "s", "q", "q_tilde", "variant", "numerator", "denominator", "ratio",
                "degenerate"});
    for (double q : cfg.q) {
        for (double s : cfg.s) {
            for (double qt : cfg.q_tilde) {
                bool target_ok = true;
                try {
                    check_existence_window(cfg.dim, s, q, qt);
                } catch (const ValidationError&) {
                    target_ok = false;
                }
                std::vector<double> best_qt, best_q;
                for (double T : cfg.T) {
                    const TimeGrid tg = TimeGrid::graded(T, cfg.M, cfg.gamma);
                    std::vector<Trajectory> flows;
                    for (const VectorField& u : fields) flows.push_back(heat_trajectory(u, tg));
                    KatoIndex idx{cfg.dim, s, q, qt, qt, T};
                    double mq = 0.0, mqt = 0.0;
                    std::size_t dq = 0, dqt = 0;
                    for (std::size_t i = 0; i < flows.size(); ++i) {
                        const std::size_t j = (i + 1) % flows.size();
                        const Trajectory B = bilinear_trajectory(flows[i], flows[j]);
                        for (int variant = 0; variant < (target_ok ? 2 : 1); ++variant) {
                            const BilinearTarget tgt = variant == 0 ? BilinearTarget::kato_q_tilde
                                                                    : BilinearTarget::kato_q;
                            const BilinearEntry e = bilinear_ratio(flows[i], flows[j], B, idx, tgt);
                            double& best = variant == 0 ? mqt : mq;
                            std::size_t& deg = variant == 0 ? dqt : dq;
                            if (e.degenerate) {
                                ++deg;
                            } else {
                                best = std::max(best, e.ratio);
                            }
                            t.add_row({num(T), num(i), num(s), num(q), num(qt), variant == 0 ? "q_tilde" : "q",
                                       num(e.numerator), num(e.denominator), num(e.ratio), flag(e.degenerate)});
                        }
                    }
                    t.add_row({num(T), "max", num(s), num(q), num(qt), "q_tilde", "", "", num(mqt), num(dqt)});
                    best_qt.push_back(mqt);
                    if (target_ok) {
                        t.add_row({num(T), "max", num(s), num(q), num(qt), "q", "", "", num(mq), num(dq)});
                        best_q.push_back(mq);
                    }
                }
                auto spread = [](const std::vector<double>& v) {
                    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
                    return *lo > 0.0 ? *hi / *lo : 0.0;
                };
                t.add_row({"all", "spread", num(s), num(q), num(qt), "q_tilde", "", "", num(spread(best_qt)), "0"});
                if (target_ok) {
                    t.add_row({"all", "spread", num(s), num(q), num(qt), "q", "", "", num(spread(best_q)), "0"});
                }
            }
        }
    }
    return t;
}

CsvTable run_solver_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    for (double q : cfg.q) {
        for (double s : cfg.s) {
            for (double qt : cfg.q_tilde) check_existence_window(cfg.dim, s, q, qt);
        }
    }
    for (double r : cfg.r) {
        if (!(r >= 1.0)) throw ValidationError("exponent window violated: r >= 1");
    }
    const SpectralGrid grid = sweep_grid(cfg, 0);
    const auto base = generate_corpus(corpus_spec(cfg, 1.0), grid);
    CsvTable t({"datum", "amplitude", "T", "s", "q", "q_tilde", "r", "gate_lhs", "gate_pass", "besov_gate_lhs",
                "shrink_T", "converged", "iterations", "contraction_ratio", "contraction_r2",
                "oracle_distance", "oracle_status", "kato_norm", "kato_norm_r1", "linf_norm", "eta_hat"});
    for (std::size_t i = 0; i < base.size(); ++i) {
        for (double amp : cfg.amplitude) {
            const VectorField u0 = amp * base[i];
            for (double T : cfg.T) {
                for (double q : cfg.q) {
                    for (double s : cfg.s) {
                        for (double qt : cfg.q_tilde) {
                            for (double r : cfg.r) {
                                SolverConfig sc;
                                sc.kato = KatoIndex{cfg.dim, s, q, qt, r, T};
                                sc.tol = cfg.tol;
                                sc.max_iter = cfg.max_iter;
                                sc.timegrid = TimeGrid::graded(T, cfg.M, cfg.gamma);
                                sc.delta_gate = cfg.delta;
                                const SolveReport rep = picard_iterate(u0, sc);
                                std::string status = "ok";
                                double dist = std::nan("");
                                try {
                                    const Trajectory ref = oracle_integrate(u0, sc.timegrid, cfg.steps);
                                    dist = relative_l2_distance(rep.solution.back(), ref.back());
                                } catch (const NumericalError&) {
                                    status = "unstable";
                                }
                                t.add_row({num(i), num(amp), num(T), num(s), num(q), num(qt), num(r),
                                           num(rep.gate.lhs), flag(rep.gate.passes),
                                           rep.besov_gate ? num(rep.besov_gate->lhs) : "nan",
                                           rep.gate.shrink_T ? num(*rep.gate.shrink_T) : "nan",
                                           flag(rep.converged), num(rep.iterations), num(rep.contraction_ratio),
                                           num(rep.contraction_r2), num(dist), status, num(rep.kato_norm),
                                           num(rep.kato_norm_r1), num(rep.linf_norm), num(rep.eta_hat)});
                            }
                        }
                    }
                }
            }
        }
    }
    return t;
}

CsvTable run_experiment(const ExperimentConfig& cfg) {
    const std::string& e = cfg.experiment;
    if (e == "corpus") return run_corpus(cfg);
    if (e == "norms") return run_norms_experiment(cfg);
    if (e == "embedding") return run_embedding_experiment(cfg);
    if (e == "product") return run_product_experiment(cfg);
    if (e == "bilinear") return run_bilinear_experiment(cfg);
    if (e == "solve") return run_solver_experiment(cfg);
    throw ValidationError("unknown experiment '" + e + "'");
}

}  // namespace mildflow

// Acceptance suite: one line per criterion, exit 1 if any fails.
// Criterion 10's large-degree run only executes when LIEMOD_STRETCH=1.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "liemod/report_json.hpp"

using namespace liemod;

namespace {

int g_failures = 0;

struct CheckFailure {
    std::string msg;
};

void check(bool ok, const std::string& msg) {
    if (!ok) throw CheckFailure{msg};
}

template <typename Fn>
void criterion(int id, const std::string& desc, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    std::string status = "PASS", detail;
    try {
        fn();
    } catch (const CheckFailure& f) {
        status = "FAIL";
        detail = f.msg;
        ++g_failures;
    } catch (const std::exception& e) {
        status = "FAIL";
        detail = std::string("unexpected exception: ") + e.what();
        ++g_failures;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << "criterion " << (id < 10 ? " " : "") << id << ": " << status << " — " << desc << " ("
         << std::fixed;
    line.precision(1);
    line << secs << " s)";
    if (!detail.empty()) line << "\n              " << detail;
    std::cout << line.str() << std::endl;
}

unsigned hw_threads() {
    const unsigned t = std::thread::hardware_concurrency();
    return t ? t : 4;
}

Permutation random_perm(unsigned n, std::mt19937_64& rng) {
    return lehmer_unrank(rng() % factorial(n), n);
}

// Shared across criteria 5-9 and 11 so the invariance sweep sees the same
// reports the certificates were built from.
std::map<std::pair<unsigned, unsigned>, ComplexityCertificate> g_certs;

const ComplexityCertificate& cert_for(unsigned n, unsigned p) {
    auto it = g_certs.find({n, p});
    if (it == g_certs.end()) {
        VarietyOptions opts;
        opts.threads = hw_threads();
        it = g_certs.emplace(std::make_pair(n, p), assemble(n, p, opts)).first;
    }
    return it->second;
}

}  // namespace

int main() {
    const bool stretch = [] {
        const char* v = std::getenv("LIEMOD_STRETCH");
        return v && std::string(v) == "1";
    }();

    criterion(1, "dimension (n-1)! confirmed by the regular-representation rank, n <= 7", [] {
        for (unsigned p : {2u, 3u, 5u}) {
            FieldContext F(p);
            for (unsigned n = 1; n <= 7; ++n)
                check(verify_dimension(n, F, hw_threads()),
                      "dimension mismatch at n=" + std::to_string(n) + " p=" + std::to_string(p));
        }
    });

    criterion(2, "defining-element square and straightening identities", [] {
        for (unsigned p : {2u, 3u, 5u}) {
            FieldContext F(p);
            for (unsigned n = 1; n <= 8; ++n)
                check(omega_square_check(n, F),
                      "square identity failed at n=" + std::to_string(n) + " p=" + std::to_string(p));
            for (unsigned n = 2; n <= 5; ++n) {
                const GroupAlgebraElement w = dsw_element(n, F);
                for (uint64_t r = 0; r < factorial(n); ++r) {
                    const Permutation rho = lehmer_unrank(r, n);
                    check(ga_multiply(straighten(rho, F), w) == ga_left_mul(rho, w),
                          "straightening failed at n=" + std::to_string(n) + " rank " +
                              std::to_string(r));
                }
            }
            std::mt19937_64 rng(2024);
            for (unsigned n : {6u, 7u}) {
                const GroupAlgebraElement w = dsw_element(n, F);
                for (int t = 0; t < 500; ++t) {
                    const Permutation rho = random_perm(n, rng);
                    check(ga_multiply(straighten(rho, F), w) == ga_left_mul(rho, w),
                          "straightening failed at n=" + std::to_string(n));
                }
            }
        }
    });

    criterion(3, "action matrices multiply like the group, 100 random pairs per degree", [] {
        std::mt19937_64 rng(77);
        for (unsigned p : {2u, 3u}) {
            FieldContext F(p);
            for (unsigned n = 2; n <= 6; ++n) {
                for (int t = 0; t < 100; ++t) {
                    const Permutation g = random_perm(n, rng), h = random_perm(n, rng);
                    check(mat_mul(F, action_matrix(F, n, g), action_matrix(F, n, h)) ==
                              action_matrix(F, n, compose(g, h)),
                          "homomorphism failed at n=" + std::to_string(n) +
                              " p=" + std::to_string(p));
                }
            }
        }
    });

    criterion(4, "free of rank 1 over the point stabilizer; projective over its subgroups", [] {
        for (unsigned p : {2u, 3u, 5u}) {
            FieldContext F(p);
            for (unsigned n = 2; n <= 7; ++n)
                check(verify_free_over_point_stabilizer(n, F, hw_threads()),
                      "freeness rank failed at n=" + std::to_string(n) + " p=" + std::to_string(p));
            // every maximal elementary abelian of the stabilizer acts projectively
            for (unsigned n = 2; n <= 6; ++n) {
                for (const auto& sub : maximal_elem_abelians(n - 1, p)) {
                    const LieRepresentation rep = restrict_to_subgroup(F, n, sub);
                    const SigmaResult s = sigma_rank_rep(F, rep);
                    check(s.pf_dim == 0, "nonzero projective-free part for shape " +
                                             sub.shape.to_string() + " inside degree " +
                                             std::to_string(n) + " at p=" + std::to_string(p));
                    for (const PointRecord& r : scan(F, rep.gen_actions, p, 1))
                        check(!r.member, "member point under a point-stabilizer subgroup");
                }
            }
        }
    });

    criterion(5, "coprime degrees 5 and 7 at p=2 certify complexity 0 with no matrix work", [] {
        for (unsigned n : {5u, 7u}) {
            const uint64_t before = action_matrix_builds().load();
            const ComplexityCertificate& c = cert_for(n, 2);
            check(action_matrix_builds().load() == before,
                  "matrix built on the shortcut path for n=" + std::to_string(n));
            check(c.certified && c.value == 0 && c.method == "exact",
                  "degree " + std::to_string(n) + " did not certify 0");
        }
    });

    criterion(6, "degree 4 at p=2: full variety on both fields, certified complexity 2", [] {
        VarietyReport rep = run_variety(4, 2, SubgroupShape::parse("2", 2));
        check(rep.points.size() == 8, "expected 3 + 5 projective points");
        for (const PointRecord& r : rep.points)
            check(r.member, "non-member point over GF(" + std::to_string(1u << r.e) + ")");
        check(rep.generic.size() == 2, "expected two charts");
        for (const GenericOutcome& g : rep.generic)
            check(g.exact && g.outcome == "member",
                  "chart " + std::to_string(g.chart) + " not certified member");
        const ComplexityCertificate& c = cert_for(4, 2);
        check(c.certified && c.value == 2, "certificate is not exactly 2");
    });

    criterion(7, "degree 6 at p=2 and p=3: certified complexity 1 under the last-factor cap", [] {
        for (unsigned p : {2u, 3u}) {
            const ComplexityCertificate& c = cert_for(6, p);
            check(c.certified && c.value == 1,
                  "degree 6 at p=" + std::to_string(p) + " did not certify 1");
            for (const SubgroupResult& s : c.subgroups)
                check(s.report.dimension.hi <= s.shape.parts.back(),
                      "summary exceeds the cap for shape " + s.shape.to_string());
        }
    });

    criterion(8, "degree 6 values match the prime-power reduction at p=2 and p=3", [] {
        for (unsigned p : {2u, 3u}) {
            VarietyOptions opts;
            opts.threads = hw_threads();
            ConsistencyRecord rec = p_power_consistency(6, p, opts);
            check(rec.agree, "brackets disagree at p=" + std::to_string(p));
            check(rec.certified, "reduction not certified at p=" + std::to_string(p));
        }
    });

    criterion(9, "cone invariance and criteria agreement on every scanned point", [] {
        size_t tested = 0;
        for (const auto& [key, cert] : g_certs) {
            const auto [n, p] = key;
            const FieldContext Fp(p);
            for (const SubgroupResult& s : cert.subgroups) {
                if (s.report.shortcut_projective) continue;
                const ElemAbelianSubgroup sub = subgroup_for_shape(n, p, s.shape);
                const LieRepresentation rep = restrict_to_subgroup(Fp, n, sub);
                const uint64_t dim = rep.dim();
                for (const PointRecord& r : s.report.points) {
                    const FieldContext Fe(p, r.e);
                    const auto gens = vdetail::widen_all<uint16_t>(rep.gen_actions);
                    const MemberVerdict base = is_member(Fe, gens, r.alpha, p);
                    check(base.member == r.member && base.rank_pm1 == r.rank,
                          "re-evaluation drifted from the report");
                    // the two freeness criteria, recomputed from scratch
                    const DenseMat<uint16_t> N = u_alpha_minus_one(Fe, gens, r.alpha);
                    const uint64_t r1 = mat_rank(Fe, N);
                    const uint64_t rp = nilpotent_power_rank(Fe, N, p - 1);
                    check((rp == dim / p) == (r1 == dim / p * (p - 1)),
                          "freeness criteria disagree");
                    check(r.member == !(rp == dim / p), "verdict contradicts the rank");
                    // cone: all nonzero scalar multiples share the verdict
                    for (uint32_t lam = 2; lam < Fe.order(); ++lam) {
                        std::vector<uint32_t> scaled(r.alpha.size());
                        for (size_t i = 0; i < r.alpha.size(); ++i)
                            scaled[i] = Fe.mul(lam, r.alpha[i]);
                        const MemberVerdict v = is_member(Fe, gens, scaled, p);
                        check(v.member == base.member && v.rank_pm1 == base.rank_pm1,
                              "membership not scale-invariant");
                    }
                    ++tested;
                }
            }
        }
        // 16 points from degree 4, 28 per shape at (6,2), 14 at (6,3)
        check(tested == 86, "expected 86 points, swept " + std::to_string(tested));
    });

    std::string c10_desc = "degree 9 at p=3 refused with a cost estimate";
    if (stretch) c10_desc += "; stretch: degree 8 at p=2 reaches 3";
    criterion(10, c10_desc, [stretch] {
        bool refused = false;
        try {
            assemble(9, 3);
        } catch (const ResourceLimitError& e) {
            refused = true;
            const std::string msg = e.what();
            check(msg.find("--force") != std::string::npos, "refusal does not mention --force");
            check(msg.find("MiB") != std::string::npos, "refusal does not estimate the cost");
            check(msg.find("40320") != std::string::npos, "refusal does not name the dimension");
        }
        check(refused, "degree 9 at p=3 was not refused");

        if (!stretch) return;
        VarietyOptions opts;
        opts.threads = 8;
        const ComplexityCertificate c = assemble(8, 2, opts);
        const SubgroupResult* regular = nullptr;
        for (const SubgroupResult& s : c.subgroups)
            if (s.shape.parts == std::vector<unsigned>{3}) regular = &s;
        check(regular != nullptr, "rank-3 shape missing");
        size_t members_e1 = 0, members_e2 = 0;
        for (const PointRecord& r : regular->report.points) {
            check(r.member, "non-member point in the rank-3 scan");
            if (r.e == 1) ++members_e1;
            if (r.e == 2) ++members_e2;
        }
        check(members_e1 == 7 && members_e2 == 21, "expected 7 + 21 member points");
        check(c.hi == 3, "upper bound is not 3");
        check(c.value == 3, "estimate is not 3");
    });

    criterion(11, "reports serialize to identical bytes at 1 and 8 workers", [] {
        VarietyOptions one, eight;
        one.threads = 1;
        eight.threads = 8;
        for (auto [n, p] : std::vector<std::pair<unsigned, unsigned>>{{5, 2}, {7, 2}, {4, 2}, {6, 2}, {6, 3}})
            check(certificate_to_json(assemble(n, p, one)).dump(2) ==
                      certificate_to_json(assemble(n, p, eight)).dump(2),
                  "certificate bytes differ for n=" + std::to_string(n) +
                      " p=" + std::to_string(p));
        for (unsigned p : {2u, 3u})
            check(consistency_to_json(p_power_consistency(6, p, one)).dump(2) ==
                      consistency_to_json(p_power_consistency(6, p, eight)).dump(2),
                  "consistency bytes differ at p=" + std::to_string(p));
        check(variety_to_json(run_variety(6, 2, SubgroupShape::parse("2,1", 2), one)).dump(2) ==
                  variety_to_json(run_variety(6, 2, SubgroupShape::parse("2,1", 2), eight)).dump(2),
              "variety bytes differ");
    });

    if (g_failures == 0) {
        std::cout << "acceptance: 11/11 criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << (11 - g_failures) << "/11 criteria passed" << std::endl;
    return 1;
}

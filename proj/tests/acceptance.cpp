// Acceptance suite: each criterion prints one PASS/FAIL line with its wall
// time and must stay inside its stated limit. Exit code = failed criteria.
// The GF(3) full-enumeration job only runs with --long.
#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "glstab/enumerate.hpp"
#include "glstab/json_io.hpp"

using namespace glstab;

namespace {

struct Outcome {
    std::vector<std::string> failures;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

struct Criterion {
    int id;
    std::string label;
    double limit_seconds;
    std::function<void(Outcome&)> body;
};

// int64 determinant by fraction-free elimination; oracle-side helper kept
// free of the library's matrix types.
long long det_i64(std::vector<long long> m, int n) {
    long long prev = 1;
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (m[static_cast<std::size_t>(i * n + k)] != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int j = 0; j < n; ++j)
                std::swap(m[static_cast<std::size_t>(piv * n + j)], m[static_cast<std::size_t>(k * n + j)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m[static_cast<std::size_t>(i * n + j)] =
                    (m[static_cast<std::size_t>(i * n + j)] * m[static_cast<std::size_t>(k * n + k)] -
                     m[static_cast<std::size_t>(i * n + k)] * m[static_cast<std::size_t>(k * n + j)]) /
                    prev;
            m[static_cast<std::size_t>(i * n + k)] = 0;
        }
        prev = m[static_cast<std::size_t>(k * n + k)];
    }
    return sign > 0 ? m[static_cast<std::size_t>(n * n - 1)] : -m[static_cast<std::size_t>(n * n - 1)];
}

Matrix random_nonzero_vector(const FieldSpec& f, int n, std::mt19937_64& rng) {
    for (;;) {
        Matrix v(f, n, 1);
        if (f.is_prime()) {
            std::uniform_int_distribution<std::uint64_t> d(0, f.modulus - 1);
            for (int i = 0; i < n; ++i) v.at(i, 0) = Scalar::residue(f, d(rng));
        } else {
            std::uniform_int_distribution<long> d(-5, 5);
            for (int i = 0; i < n; ++i) v.at(i, 0) = Scalar::from_int(f, d(rng));
        }
        if (!v.is_zero()) return v;
    }
}

void criterion_enumeration(Outcome& o) {
    CampaignConfig cfg;
    cfg.field = FieldSpec::gf(2);
    cfg.n = 2;
    EnumerationReport rep = enumerate_preservers(cfg);
    o.require(rep.total_maps == 65536, "expected 65536 maps");
    o.require(rep.preserver_count == 144, "expected 144 preservers, got " + std::to_string(rep.preserver_count));
    o.require(rep.bijective_count == 72, "expected 72 bijective preservers");
    o.require(rep.singular_count == 72, "expected 72 singular preservers");
    o.require(rep.frobenius_expected == 72 && rep.pinch_expected == 72,
              "constructive oracle sizes changed");
    o.require(rep.complete, "scan incomplete");
    o.require(rep.anomalies.empty(), "campaign reported anomalies");
    for (const auto& a : rep.anomalies) o.detail << "    anomaly: " << a << "\n";
    o.detail << "    144 preservers = 72 bijective + 72 singular, anomalies: 0";
}

void criterion_theorem1(Outcome& o) {
    CampaignConfig cfg;
    cfg.field = FieldSpec::gf(2);
    cfg.n = 2;
    Theorem1Report rep = verify_theorem1(cfg);
    o.require(!rep.sampled, "expected the full scan");
    o.require(rep.onto_count == 72, "f(GL)=GL set has size " + std::to_string(rep.onto_count));
    o.require(rep.preimage_count == 72, "f^{-1}(GL)=GL set has size " + std::to_string(rep.preimage_count));
    o.require(rep.sets_match, "onto / preimage / Frobenius sets differ");
    o.require(rep.proof_device_ok, "truncated-identity device failed");
    o.require(rep.anomalies.empty(), "theorem 1 audit reported anomalies");
    o.detail << "    both set conditions select exactly the 72 bijective preservers";
}

void criterion_dieudonne(Outcome& o) {
    DieudonneReport rep = dieudonne_audit(FieldSpec::gf(2), 2);
    o.require(rep.full_enumeration, "expected the full lattice");
    o.require(rep.subspaces_seen == 67, "expected 67 subspaces, saw " + std::to_string(rep.subspaces_seen));
    o.require(rep.max_singular_dim == 2, "a singular subspace beat the n^2-n bound");
    o.require(rep.singular_per_dim.count(2) && rep.singular_per_dim.at(2) == 6,
              "expected 6 maximal singular subspaces");
    o.require(rep.kernel_type == 3 && rep.image_type == 3, "expected the 3 + 3 split");
    o.require(rep.anomalies.empty(), "audit reported anomalies");
    o.detail << "    67 subspaces, singular dims <= 2, maximal split 3 kernel / 3 image";
}

void criterion_frobenius_roundtrip(Outcome& o) {
    std::uint64_t done = 0;
    for (auto f : {FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::gf(5)}) {
        for (int n = 2; n <= 3; ++n) {
            std::mt19937_64 rng(1000 + f.modulus + static_cast<unsigned>(n));
            for (int t = 0; t < 500; ++t) {
                Matrix p = random_invertible(f, n, rng);
                Matrix q = random_invertible(f, n, rng);
                bool twisted = t % 2 == 1;
                MatEndo built = twisted ? build_v(p, q) : build_u(p, q);
                PreserverClassification c = classify(built, 10000, 64, 7);
                bool tag_ok = c.tag == (twisted ? PreserverClassification::Tag::FrobeniusTwisted
                                                : PreserverClassification::Tag::FrobeniusDirect);
                o.require(tag_ok, "twist mis-detected over " + f.str());
                if (!tag_ok) return;
                o.require(reconstruct(c) == built, "reconstruction mismatch over " + f.str());
                ++done;
            }
        }
    }
    FieldSpec q = FieldSpec::rationals();
    for (int n = 2; n <= 3; ++n) {
        std::mt19937_64 rng(77 + static_cast<unsigned>(n));
        for (int t = 0; t < 50; ++t) {
            Matrix p = random_invertible(q, n, rng);
            Matrix qq = random_invertible(q, n, rng);
            bool twisted = t % 2 == 1;
            MatEndo built = twisted ? build_v(p, qq) : build_u(p, qq);
            PreserverClassification c = classify(built, 10000, 64, 7);
            bool tag_ok = c.tag == (twisted ? PreserverClassification::Tag::FrobeniusTwisted
                                            : PreserverClassification::Tag::FrobeniusDirect);
            o.require(tag_ok, "twist mis-detected over the rationals");
            if (!tag_ok) return;
            o.require(reconstruct(c) == built, "reconstruction mismatch over the rationals");
            ++done;
        }
    }
    o.detail << "    " << done << " random Frobenius maps recovered exactly";
}

void criterion_pinch_roundtrip(Outcome& o) {
    FieldSpec f2 = FieldSpec::gf(2);
    FieldSpec f3 = FieldSpec::gf(3);
    FieldSpec q = FieldSpec::rationals();
    std::vector<DivisionAlgebraSpec> presets{
        preset_companion(Polynomial::from_ints(f2, {1, 1, 1})),
        preset_companion(Polynomial::from_ints(f3, {1, 0, 1})),
        preset_companion(Polynomial::from_ints(q, {-2, 0, 0, 1})),
        preset_gaussian_pair(q),
        preset_hamilton_quaternions(),
    };
    std::uint64_t done = 0;
    for (const auto& alg : presets) {
        MatrixSubspace v = to_subspace(alg);
        int n = v.side();
        std::mt19937_64 rng(3000 + static_cast<unsigned>(n));
        for (int t = 0; t < 100; ++t) {
            Matrix a = random_invertible(alg.field, n, rng);
            Matrix x = normalize_first_nonzero(random_nonzero_vector(alg.field, n, rng));
            bool twisted = t % 2 == 0;
            MatEndo built = build_pinch(v, a, x, twisted);
            PreserverClassification c = classify(built, kDefaultBudget, 32, 11);
            bool tag_ok = c.tag == (twisted ? PreserverClassification::Tag::PinchTwisted
                                            : PreserverClassification::Tag::PinchDirect);
            o.require(tag_ok, "pinch twist mis-detected over " + alg.field.str());
            if (!tag_ok) return;
            o.require(*c.X == x, "pinch line not recovered");
            o.require(c.V->same_subspace(v), "image subspace differs");
            o.require(reconstruct(c) == built, "pinch reconstruction mismatch");
            ++done;
        }
    }
    o.detail << "    " << done << " random pinch maps over 5 preset subspaces recovered exactly";
}

void criterion_bridge(Outcome& o) {
    FieldSpec f2 = FieldSpec::gf(2);
    auto planes = all_full_nonsingular_subspaces(f2, 2);
    o.require(planes.size() == 2, "expected exactly 2 full non-singular planes in M_2(F_2)");
    for (const auto& v : planes) {
        DivisionAlgebraSpec alg = from_subspace(v);
        MatrixSubspace back = to_subspace(alg);
        o.require(back.same_subspace(v), "to_subspace(from_subspace(V)) != V");
        o.require(from_subspace(back) == alg, "structure constants drifted through the bridge");
    }
    FieldSpec q = FieldSpec::rationals();
    std::vector<DivisionAlgebraSpec> presets{
        preset_companion(Polynomial::from_ints(f2, {1, 1, 1})),
        preset_companion(Polynomial::from_ints(FieldSpec::gf(3), {1, 0, 1})),
        preset_companion(Polynomial::from_ints(q, {-2, 0, 0, 1})),
        preset_gaussian_pair(q),
        preset_hamilton_quaternions(),
        preset_octonions(),
    };
    for (const auto& alg : presets) {
        MatrixSubspace v = to_subspace(alg);
        o.require(from_subspace(v) == alg, "preset bridge roundtrip failed");
        o.require(is_full_nonsingular(v).tag == NonsingTag::Verified,
                  "preset subspace lost its certificate");
    }
    // Remark (b) exhaustively for dim-2 algebras over GF(2) and GF(3)
    for (auto f : {FieldSpec::gf(2), FieldSpec::gf(3)}) {
        std::uint64_t qm = f.modulus;
        std::uint64_t total = 1;
        for (int i = 0; i < 8; ++i) total *= qm;
        for (std::uint64_t code = 0; code < total; ++code) {
            DivisionAlgebraSpec alg(f, 2);
            std::uint64_t w = code;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k) {
                        alg.at(i, j, k) = Scalar::residue(f, w % qm);
                        w /= qm;
                    }
            bool left_ok = true;
            for (std::uint64_t a = 1; a < qm * qm && left_ok; ++a) {
                Matrix av(f, 2, 1);
                av.at(0, 0) = Scalar::residue(f, a % qm);
                av.at(1, 0) = Scalar::residue(f, a / qm);
                left_ok = !left_mult(alg, av).det().is_zero();
            }
            if (!left_ok) continue;
            for (std::uint64_t b = 1; b < qm * qm; ++b) {
                Matrix bv(f, 2, 1);
                bv.at(0, 0) = Scalar::residue(f, b % qm);
                bv.at(1, 0) = Scalar::residue(f, b / qm);
                if (right_mult(alg, bv).det().is_zero()) {
                    o.require(false, "left-bijective algebra with a singular right multiplication");
                    return;
                }
            }
        }
    }
    o.detail << "    bridge exact on both GF(2) planes and all presets; left => right bijectivity held";
}

void criterion_quaternion_certificate(Outcome& o) {
    DivisionAlgebraSpec h = preset_hamilton_quaternions();
    FieldSpec q = h.field;
    // library path: the certificate was verified symbolically at construction
    o.require(h.certificate && h.certificate->kind == NonSingularityCertificate::Kind::PositiveDefiniteForm &&
                  h.certificate->power == 2,
              "quaternion preset lacks the quartic certificate");
    // oracle path: evaluate det(left_mult(x)) on the full grid {0..8}^4 with
    // plain integer arithmetic; degree <= 8 per variable makes this decisive
    std::vector<Matrix> ls;
    for (int i = 0; i < 4; ++i) ls.push_back(left_mult(h, Matrix::basis_vector(q, 4, i)));
    std::vector<std::array<long long, 16>> li(4);
    for (int i = 0; i < 4; ++i)
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                mpq_class val = ls[static_cast<std::size_t>(i)].at(r, c).rat();
                li[static_cast<std::size_t>(i)][static_cast<std::size_t>(r * 4 + c)] = val.get_num().get_si();
            }
    for (long long x0 = 0; x0 <= 8 && o.failures.empty(); ++x0)
        for (long long x1 = 0; x1 <= 8 && o.failures.empty(); ++x1)
            for (long long x2 = 0; x2 <= 8; ++x2)
                for (long long x3 = 0; x3 <= 8; ++x3) {
                    std::vector<long long> m(16, 0);
                    long long xs[4] = {x0, x1, x2, x3};
                    for (int i = 0; i < 4; ++i)
                        for (int e = 0; e < 16; ++e)
                            m[static_cast<std::size_t>(e)] += xs[i] * li[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)];
                    long long norm = x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3;
                    if (det_i64(m, 4) != norm * norm) {
                        o.require(false, "grid point disagrees with (sum of squares)^2");
                        break;
                    }
                }
    // the induced pinch map sampled 1e5 times with zero refutations
    MatrixSubspace v = to_subspace(h);
    MatEndo pinch = build_pinch(v, Matrix::identity(q, 4), Matrix::basis_vector(q, 4, 0), false);
    PreservationVerdict pv = preserves_GL(pinch, kDefaultBudget, 100000, 13);
    o.require(pv.tag == PreservationVerdict::Tag::SampledPass, "sampled preservation refuted");
    o.require(pv.count == 100000, "expected 1e5 samples");
    o.detail << "    det(left_mult(x)) = (x1^2+x2^2+x3^2+x4^2)^2 on the full grid; 100000 samples, 0 refutations";
}

void criterion_span(Outcome& o) {
    std::vector<std::pair<FieldSpec, int>> cases{{FieldSpec::gf(2), 2},
                                                 {FieldSpec::gf(3), 2},
                                                 {FieldSpec::gf(2), 3},
                                                 {FieldSpec::gf(3), 3}};
    SpanAuditReport rep = verify_span(cases);
    o.require(rep.all_ok, "a span case failed");
    o.detail << "    dim span(GL) = n^2 with explicit generator identities, 4 cases";
}

void criterion_onto(Outcome& o) {
    CampaignConfig cfg;
    cfg.field = FieldSpec::gf(2);
    cfg.n = 2;
    OntoAuditReport rep = verify_onto(cfg);
    o.require(rep.preservers == 144, "preserver set size drifted");
    o.require(rep.checks == 432, "expected 144 x 3 checks");
    o.require(rep.all_onto, "an induced column map failed to be onto");
    o.require(rep.anomalies.empty(), "onto audit reported anomalies");
    o.detail << "    M -> f(M)X onto for all 144 preservers and all 3 nonzero X";
}

void criterion_gf3_campaign(Outcome& o) {
    CampaignConfig cfg;
    cfg.field = FieldSpec::gf(3);
    cfg.n = 2;
    cfg.allow_long = true;
    EnumerationReport rep = enumerate_preservers(cfg);
    o.require(rep.total_maps == 43046721, "expected 3^16 maps");
    o.require(rep.complete, "scan incomplete");
    o.require(rep.anomalies.empty(), "campaign reported anomalies");
    o.require(rep.preserver_count == rep.frobenius_expected + rep.pinch_expected,
              "scan size disagrees with the constructive set");
    for (const auto& a : rep.anomalies) o.detail << "    anomaly: " << a << "\n";
    o.detail << "    " << rep.preserver_count << " preservers (" << rep.bijective_count
             << " bijective + " << rep.singular_count << " singular) matched the constructive set";
}

} // namespace

int main(int argc, char** argv) {
    bool run_long = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--long") == 0) run_long = true;

    std::vector<Criterion> criteria{
        {1, "exhaustive GF(2) n=2 preserver scan matches the constructive set", 30, criterion_enumeration},
        {2, "f(GL)=GL and f^{-1}(GL)=GL both select the 72 bijective preservers", 60, criterion_theorem1},
        {3, "full subspace-lattice audit of M_2(F_2)", 1, criterion_dieudonne},
        {4, "Frobenius roundtrip over GF(2)/GF(3)/GF(5) (n=2,3) and Q", 120, criterion_frobenius_roundtrip},
        {5, "pinch roundtrip over the five preset subspaces", 120, criterion_pinch_roundtrip},
        {6, "division-algebra bridge roundtrips and right-bijectivity", 60, criterion_bridge},
        {7, "quaternion determinant certificate and sampled preservation", 120, criterion_quaternion_certificate},
        {8, "GL spans M_n for (n,q) in {2,3}x{2,3}", 1, criterion_span},
        {9, "column maps of certified preservers are onto", 1, criterion_onto},
    };
    if (run_long)
        criteria.push_back({10, "full GF(3) n=2 enumeration matches the constructive set", 1800,
                            criterion_gf3_campaign});

    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.failures.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_seconds)
            o.failures.push_back("exceeded the " + std::to_string(c.limit_seconds) + " s limit");
        bool ok = o.failures.empty();
        std::printf("%s criterion %d: %s (%.2f s / limit %.0f s)\n", ok ? "PASS" : "FAIL", c.id,
                    c.label.c_str(), secs, c.limit_seconds);
        std::string detail = o.detail.str();
        if (!detail.empty()) std::printf("%s\n", detail.c_str());
        for (const auto& f : o.failures) std::printf("    failure: %s\n", f.c_str());
        if (!ok) ++failed;
    }
    if (!run_long)
        std::printf("SKIP criterion 10: full GF(3) n=2 enumeration (run with --long)\n");
    return failed;
}

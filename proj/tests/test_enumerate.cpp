#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "glstab/enumerate.hpp"
#include "glstab/json_io.hpp"

using namespace glstab;

TEST_CASE("constructive sets over GF(2), n=2") {
    FieldSpec f2 = FieldSpec::gf(2);
    auto frob = constructive_frobenius_set(f2, 2);
    CHECK(frob.size() == 72); // 36 u-maps + 36 v-maps, disjoint
    auto pinch = constructive_pinch_set(f2, 2);
    CHECK(pinch.size() == 72); // 2 subspaces x 6 isos x 3 lines x 2 twists
    for (std::uint64_t c : pinch) CHECK_FALSE(frob.count(c));
}

TEST_CASE("full GF(2) campaign reproduces the constructive preserver set") {
    CampaignConfig cfg;
    cfg.field = FieldSpec::gf(2);
    cfg.n = 2;
    cfg.jobs = 2;
    EnumerationReport rep = enumerate_preservers(cfg);
    CHECK(rep.total_maps == 65536);
    CHECK(rep.preserver_count == 144);
    CHECK(rep.bijective_count == 72);
    CHECK(rep.singular_count == 72);
    CHECK(rep.frobenius_expected == 72);
    CHECK(rep.pinch_expected == 72);
    CHECK(rep.complete);
    CHECK(rep.anomalies.empty());
    CHECK(rep.class_histogram.at("frobenius-direct") == 36);
    CHECK(rep.class_histogram.at("frobenius-twisted") == 36);
    CHECK(rep.class_histogram.at("pinch-direct") == 36);
    CHECK(rep.class_histogram.at("pinch-twisted") == 36);
}

TEST_CASE("partition soundness and determinism") {
    CampaignConfig one;
    one.field = FieldSpec::gf(2);
    one.n = 2;
    one.jobs = 1;
    CampaignConfig eight = one;
    eight.jobs = 8;
    EnumerationReport a = enumerate_preservers(one);
    EnumerationReport b = enumerate_preservers(eight);
    CHECK(a.same_outcome(b)); // worker count cannot change the outcome
    EnumerationReport c = enumerate_preservers(one);
    CHECK(a.same_outcome(c)); // identical config and seed: identical outcome
}

TEST_CASE("packed engine agrees with the serial reference engine") {
    CampaignConfig packed;
    packed.field = FieldSpec::gf(2);
    packed.n = 2;
    packed.engine = CampaignConfig::Engine::Packed;
    CampaignConfig ref = packed;
    ref.engine = CampaignConfig::Engine::Reference;
    auto pa = scan_preservers(packed, nullptr, nullptr);
    auto rb = scan_preservers(ref, nullptr, nullptr);
    CHECK(pa == rb);
    CHECK(pa.size() == 144);

    // GF(3) slab comparison
    CampaignConfig p3;
    p3.field = FieldSpec::gf(3);
    p3.n = 2;
    p3.engine = CampaignConfig::Engine::Packed;
    p3.resume_from = 0;
    p3.max_maps = 40000;
    CampaignConfig r3 = p3;
    r3.engine = CampaignConfig::Engine::Reference;
    CHECK(scan_preservers(p3, nullptr, nullptr) == scan_preservers(r3, nullptr, nullptr));
}

TEST_CASE("early-exit soundness on random GF(3) slabs") {
    std::mt19937_64 rng(71);
    std::uint64_t total = endo_count(FieldSpec::gf(3), 2);
    std::uniform_int_distribution<std::uint64_t> d(0, total - 30000);
    std::uint64_t covered = 0;
    while (covered < 100000) {
        CampaignConfig on;
        on.field = FieldSpec::gf(3);
        on.n = 2;
        on.resume_from = d(rng);
        on.max_maps = 25000;
        on.early_exit = true;
        CampaignConfig off = on;
        off.early_exit = false;
        REQUIRE(scan_preservers(on, nullptr, nullptr) == scan_preservers(off, nullptr, nullptr));
        covered += on.max_maps;
    }
}

TEST_CASE("packed invertibility tables agree with the generic path on random entries") {
    std::mt19937_64 rng(73);
    FieldSpec f2 = FieldSpec::gf(2);
    FieldSpec f3 = FieldSpec::gf(3);
    std::uniform_int_distribution<std::uint64_t> d2(0, 15), d3(0, 80);
    for (int t = 0; t < 100000; ++t) {
        Matrix m2 = unpack_base_p(f2, 2, 2, d2(rng));
        REQUIRE(Gf2Mat::from_matrix(m2).det() == !m2.det().is_zero());
        Matrix m3 = unpack_base_p(f3, 2, 2, d3(rng));
        REQUIRE(Scalar::residue(f3, Gf3Mat::from_matrix(m3).det()) == m3.det());
    }
}

TEST_CASE("campaign gates: hard cap and the long-job override") {
    CampaignConfig huge;
    huge.field = FieldSpec::gf(5);
    huge.n = 2;
    CHECK_THROWS_AS(enumerate_preservers(huge), BudgetExceeded); // 5^16 maps

    CampaignConfig gf3;
    gf3.field = FieldSpec::gf(3);
    gf3.n = 2;
    CHECK_THROWS_AS(enumerate_preservers(gf3), BudgetExceeded); // needs allow_long
}

TEST_CASE("injected worker failure marks the report incomplete") {
    CampaignConfig cfg;
    cfg.field = FieldSpec::gf(2);
    cfg.n = 2;
    cfg.inject_partition_failure = 0;
    EnumerationReport rep = enumerate_preservers(cfg);
    CHECK_FALSE(rep.complete);
    REQUIRE_FALSE(rep.anomalies.empty());
    CHECK(rep.anomalies[0].find("worker failure") != std::string::npos);
    // partial results stay inside the constructive set
    for (const auto& a : rep.anomalies)
        CHECK(a.find("outside the constructive set") == std::string::npos);
}

TEST_CASE("partial scans stay within the constructive set") {
    CampaignConfig cfg;
    cfg.field = FieldSpec::gf(2);
    cfg.n = 2;
    cfg.resume_from = 30000;
    cfg.max_maps = 20000;
    EnumerationReport rep = enumerate_preservers(cfg);
    CHECK_FALSE(rep.complete);
    CHECK(rep.scanned_from == 30000);
    CHECK(rep.scanned_to == 50000);
    CHECK(rep.anomalies.empty());
}

TEST_CASE("theorem 1 sets over GF(2), n=2") {
    CampaignConfig cfg;
    cfg.field = FieldSpec::gf(2);
    cfg.n = 2;
    cfg.jobs = 2;
    Theorem1Report rep = verify_theorem1(cfg);
    CHECK(rep.maps_checked == 65536);
    CHECK_FALSE(rep.sampled);
    CHECK(rep.onto_count == 72);
    CHECK(rep.preimage_count == 72);
    CHECK(rep.bijective_preservers == 72);
    CHECK(rep.sets_match);
    CHECK(rep.proof_device_ok);
    CHECK(rep.anomalies.empty());
}

TEST_CASE("theorem 1 sampled variant over GF(3), n=2") {
    CampaignConfig cfg;
    cfg.field = FieldSpec::gf(3);
    cfg.n = 2;
    cfg.samples = 20000;
    Theorem1Report rep = verify_theorem1(cfg);
    CHECK(rep.sampled);
    CHECK(rep.sets_match);
    CHECK(rep.proof_device_ok);
    CHECK(rep.anomalies.empty());
}

TEST_CASE("onto audit over every GF(2) preserver and every nonzero X") {
    CampaignConfig cfg;
    cfg.field = FieldSpec::gf(2);
    cfg.n = 2;
    OntoAuditReport rep = verify_onto(cfg);
    CHECK(rep.preservers == 144);
    CHECK(rep.checks == 144 * 3);
    CHECK(rep.all_onto);
    CHECK(rep.anomalies.empty());
}

TEST_CASE("span audit cases") {
    std::vector<std::pair<FieldSpec, int>> cases{{FieldSpec::gf(2), 2},
                                                 {FieldSpec::gf(2), 3},
                                                 {FieldSpec::gf(3), 2},
                                                 {FieldSpec::gf(3), 3}};
    SpanAuditReport rep = verify_span(cases);
    CHECK(rep.all_ok);
    CHECK(rep.cases.size() == 4);
}

TEST_CASE("endomorphism packing roundtrips") {
    FieldSpec f3 = FieldSpec::gf(3);
    std::mt19937_64 rng(79);
    for (int t = 0; t < 100; ++t) {
        Matrix p = random_invertible(f3, 2, rng), q = random_invertible(f3, 2, rng);
        MatEndo f = build_u(p, q);
        REQUIRE(unpack_endo(f3, 2, pack_endo(f)) == f);
    }
    // spot check the packed single-map tester against the generic verdict
    MatEndo id = MatEndo::identity(f3, 2);
    CHECK(map_preserves_packed(f3, 2, pack_endo(id), 1, true));
    MatEndo zero(f3, 2, Matrix(f3, 4, 4));
    CHECK_FALSE(map_preserves_packed(f3, 2, pack_endo(zero), 1, true));
}

TEST_CASE("identical config and seed give byte-identical reports modulo wall time") {
    CampaignConfig cfg;
    cfg.field = FieldSpec::gf(2);
    cfg.n = 2;
    cfg.jobs = 2;
    cfg.seed = 33;
    Json a = to_json(enumerate_preservers(cfg));
    Json b = to_json(enumerate_preservers(cfg));
    a.erase("wall_time");
    b.erase("wall_time");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("classify refutes sampled non-preservers from the scan's complement") {
    std::mt19937_64 rng(97);
    for (auto f : {FieldSpec::gf(2), FieldSpec::gf(3)}) {
        std::set<std::uint64_t> expected = constructive_frobenius_set(f, 2);
        auto pinch = constructive_pinch_set(f, 2);
        expected.insert(pinch.begin(), pinch.end());
        std::uint64_t total = endo_count(f, 2);
        std::uniform_int_distribution<std::uint64_t> d(0, total - 1);
        int refuted = 0;
        for (int t = 0; t < 400; ++t) {
            std::uint64_t code = d(rng);
            if (expected.count(code)) continue;
            PreserverClassification c = classify(unpack_endo(f, 2, code));
            REQUIRE(c.tag == PreserverClassification::Tag::NotPreserver);
            REQUIRE(c.witness.has_value());
            ++refuted;
        }
        CHECK(refuted > 300);
    }
}

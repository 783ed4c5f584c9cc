// Exhaustive enumeration campaigns over small prime fields: scan every
// linear endomorphism of M_n(F_p), keep the GL-preservers, classify them,
// and cross-check the set against an independently generated constructive
// expected set. The packed kernel is OpenMP-parallel over index slabs; a
// serial generic-arithmetic reference engine is kept for testing.
#pragma once

#include <set>

#include "glstab/algebra.hpp"
#include "glstab/endo.hpp"
#include "glstab/packed.hpp"

namespace glstab {

struct CampaignConfig {
    FieldSpec field = FieldSpec::gf(2);
    int n = 2;
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t samples = 10000;
    int jobs = 0; // 0 = library default
    std::uint64_t seed = 1;
    std::uint64_t hard_cap = 1ull << 26;   // refuse campaigns above this many maps
    bool allow_long = false;               // override gate for > 2^20 maps
    std::uint64_t resume_from = 0;         // odometer cursor (linear map index)
    std::uint64_t max_maps = 0;            // 0 = to the end
    enum class Engine { Auto, Packed, Reference } engine = Engine::Auto;
    bool early_exit = true;
    std::optional<int> inject_partition_failure; // test hook
};

struct EnumerationReport {
    std::string field;
    int n = 0;
    std::string engine;
    std::uint64_t seed = 0;
    std::uint64_t total_maps = 0;
    std::uint64_t scanned_from = 0, scanned_to = 0;
    std::uint64_t preserver_count = 0;
    std::uint64_t bijective_count = 0;
    std::uint64_t singular_count = 0;
    std::map<std::string, std::uint64_t> class_histogram;
    std::uint64_t frobenius_expected = 0;
    std::uint64_t pinch_expected = 0;
    std::vector<std::uint64_t> preservers; // packed op encodings, sorted
    std::vector<std::string> anomalies;
    double wall_time = 0;
    int partitions = 1;
    bool complete = true;

    bool same_outcome(const EnumerationReport& o) const; // ignores wall_time/partitions
};

std::uint64_t endo_count(const FieldSpec& f, int n); // p^(n^4), hard-capped

std::uint64_t pack_endo(const MatEndo& f);
MatEndo unpack_endo(const FieldSpec& f, int n, std::uint64_t code);

// Constructive expected sets (the oracle side of the campaign).
std::set<std::uint64_t> constructive_frobenius_set(const FieldSpec& f, int n,
                                                   std::uint64_t budget = kDefaultBudget);
std::set<std::uint64_t> constructive_pinch_set(const FieldSpec& f, int n,
                                               std::uint64_t budget = kDefaultBudget);
std::vector<MatrixSubspace> all_full_nonsingular_subspaces(const FieldSpec& f, int n,
                                                           std::uint64_t budget = kDefaultBudget);

// Raw scan: packed preservation test over an index range, no classification.
std::vector<std::uint64_t> scan_preservers(const CampaignConfig& cfg, int* partitions_used,
                                           std::vector<std::string>* failures);
// Single-map preservation test used by the soundness cross-checks.
bool map_preserves_packed(const FieldSpec& f, int n, std::uint64_t code,
                          std::uint64_t seed, bool early_exit);

EnumerationReport enumerate_preservers(const CampaignConfig& cfg);

struct Theorem1Report {
    std::string field;
    int n = 0;
    std::uint64_t seed = 0;
    std::uint64_t maps_checked = 0;
    std::uint64_t onto_count = 0;     // f(GL) = GL
    std::uint64_t preimage_count = 0; // f^{-1}(GL) = GL
    std::uint64_t bijective_preservers = 0;
    bool sets_match = false;
    bool proof_device_ok = false;
    bool sampled = false;
    std::vector<std::string> anomalies;
    double wall_time = 0;
};
Theorem1Report verify_theorem1(const CampaignConfig& cfg);

struct OntoAuditReport {
    std::string field;
    int n = 0;
    std::uint64_t preservers = 0;
    std::uint64_t checks = 0;
    bool all_onto = false;
    std::vector<std::string> anomalies;
};
OntoAuditReport verify_onto(const CampaignConfig& cfg);

struct SpanAuditReport {
    std::vector<std::string> cases; // "n=2 gf:2 ok"
    bool all_ok = false;
};
SpanAuditReport verify_span(const std::vector<std::pair<FieldSpec, int>>& cases,
                            std::uint64_t budget = kDefaultBudget);

} // namespace glstab

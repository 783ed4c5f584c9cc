// Benchmark of the preserver-scan engines: the packed OpenMP kernel against
// the serial generic-arithmetic reference, on identical index ranges.
#include <chrono>
#include <cstdio>
#include <string>

#include <omp.h>

#include "glstab/enumerate.hpp"

using namespace glstab;

namespace {

struct Run {
    const char* label;
    CampaignConfig cfg;
};

double time_scan(const CampaignConfig& cfg, std::size_t* found) {
    auto t0 = std::chrono::steady_clock::now();
    auto result = scan_preservers(cfg, nullptr, nullptr);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    *found = result.size();
    return secs;
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t gf3_slab = 2000000;
    if (argc > 1) gf3_slab = std::stoull(argv[1]);

    std::printf("scan engines, %d threads available\n", omp_get_max_threads());
    std::printf("%-34s %12s %10s %14s %10s\n", "case", "maps", "found", "maps/s", "seconds");

    auto bench = [&](const char* label, const FieldSpec& f, int n, std::uint64_t max_maps,
                     CampaignConfig::Engine engine, int jobs) {
        CampaignConfig cfg;
        cfg.field = f;
        cfg.n = n;
        cfg.engine = engine;
        cfg.max_maps = max_maps;
        cfg.jobs = jobs;
        std::size_t found = 0;
        double secs = time_scan(cfg, &found);
        std::uint64_t maps = max_maps == 0 ? endo_count(f, n) : max_maps;
        std::printf("%-34s %12llu %10zu %14.0f %10.3f\n", label,
                    static_cast<unsigned long long>(maps), found,
                    static_cast<double>(maps) / secs, secs);
    };

    bench("gf:2 n=2 full, reference serial", FieldSpec::gf(2), 2, 0,
          CampaignConfig::Engine::Reference, 1);
    bench("gf:2 n=2 full, packed 1 thread", FieldSpec::gf(2), 2, 0,
          CampaignConfig::Engine::Packed, 1);
    bench("gf:2 n=2 full, packed all", FieldSpec::gf(2), 2, 0, CampaignConfig::Engine::Packed, 0);
    bench("gf:3 n=2 slab, reference serial", FieldSpec::gf(3), 2, gf3_slab / 20,
          CampaignConfig::Engine::Reference, 1);
    bench("gf:3 n=2 slab, packed 1 thread", FieldSpec::gf(3), 2, gf3_slab,
          CampaignConfig::Engine::Packed, 1);
    bench("gf:3 n=2 slab, packed all", FieldSpec::gf(3), 2, gf3_slab,
          CampaignConfig::Engine::Packed, 0);
    return 0;
}

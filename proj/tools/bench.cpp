// Benchmark comparing the serial reference kernels against the OpenMP
// paths: double-description pair combination, dense entropy vectors, and
// batched stabiliser kernel solves.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "entrocone/cone.hpp"
#include "entrocone/quantum.hpp"
#include "entrocone/stab.hpp"

using namespace entrocone;

namespace {

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F>
double timed(F&& f) {
    const double start = now();
    f();
    return now() - start;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-34s serial %8.3f s   parallel %8.3f s   speedup %.2fx\n", name, serial,
                parallel, parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both columns run the serial path\n");
#endif

    {
        auto cone_h = cone::build_quantum_ingleton_cone();
        std::vector<cone::Ray> a, b;
        double ts = timed([&] { a = cone::extreme_rays(cone_h, ExecPolicy::serial); });
        double tp = timed([&] { b = cone::extreme_rays(cone_h, ExecPolicy::parallel); });
        if (a != b) {
            std::printf("MISMATCH between serial and parallel ray sets\n");
            return 1;
        }
        report("extreme_rays(quantum-ingleton-4)", ts, tp);
    }

    {
        auto c5 = cone::build_pure_5party_cone();
        std::vector<cone::Ray> a, b;
        double ts = timed([&] { a = cone::extreme_rays(c5, ExecPolicy::serial); });
        double tp = timed([&] { b = cone::extreme_rays(c5, ExecPolicy::parallel); });
        if (a != b) {
            std::printf("MISMATCH between serial and parallel ray sets\n");
            return 1;
        }
        report("extreme_rays(pure-5)", ts, tp);
    }

    {
        auto r3 = stab::build_paper_group(stab::PaperTag::R3);
        auto proj = quantum::stabiliser_projector(r3, std::vector<unsigned>(5, 0));
        EntropyVector a = quantum::entropy_vector(proj.state, r3.parties, r3.qudit_party,
                                                  ExecPolicy::serial);
        double ts = timed([&] {
            a = quantum::entropy_vector(proj.state, r3.parties, r3.qudit_party,
                                        ExecPolicy::serial);
        });
        EntropyVector b = a;
        double tp = timed([&] {
            b = quantum::entropy_vector(proj.state, r3.parties, r3.qudit_party,
                                        ExecPolicy::parallel);
        });
        if (!(a == b)) {
            std::printf("MISMATCH between serial and parallel entropy vectors\n");
            return 1;
        }
        report("entropy_vector(R3 projector, 243d)", ts, tp);
    }

    {
        const auto sys = PartySystem::alphabetic(5);
        double ts = timed([&] {
            for (int i = 0; i < 60; ++i) {
                auto g = stab::random_stabiliser_group(40000 + i, i % 2 ? 3 : 2, 9, sys);
                (void)stab::entropy_vector(g, ExecPolicy::serial);
            }
        });
        double tp = timed([&] {
            for (int i = 0; i < 60; ++i) {
                auto g = stab::random_stabiliser_group(40000 + i, i % 2 ? 3 : 2, 9, sys);
                (void)stab::entropy_vector(g, ExecPolicy::parallel);
            }
        });
        report("stabiliser entropy batch (60 x n=9)", ts, tp);
    }

    return 0;
}

// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: group enumeration, Cayley BFS, and epimorphism search.
// Each scenario checks that both paths produce identical results.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "pslgrow/cayley.hpp"
#include "pslgrow/psl2.hpp"
#include "pslgrow/signatures.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <class F>
auto timed(F&& f, double& ms) {
    double t0 = now_ms();
    auto result = f();
    ms = now_ms() - t0;
    return result;
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-34s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n", name.c_str(),
                serial_ms, parallel_ms, serial_ms / parallel_ms, equal ? "match" : "MISMATCH");
}

std::vector<pslgrow::Psl2> classical_generators(std::int64_t p) {
    return {pslgrow::make_psl2(0, -1, 1, 0, p), pslgrow::make_psl2(1, 1, 0, 1, p)};
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled, parallel paths run single-threaded\n\n");
#endif

    for (std::int64_t p : {131, 191}) {
        double s_ms = 0, p_ms = 0;
        auto serial = timed([&] { return pslgrow::serial::enumerate_group(std::uint32_t(p)); }, s_ms);
        auto parallel = timed([&] { return pslgrow::enumerate_group(std::uint32_t(p)); }, p_ms);
        report("enumerate_group p=" + std::to_string(p), s_ms, p_ms, serial == parallel);
    }

    for (std::int64_t p : {47, 71}) {
        double s_ms = 0, p_ms = 0;
        auto gens = classical_generators(p);
        auto serial = timed([&] { return pslgrow::serial::cayley_growth(gens, 64); }, s_ms);
        auto parallel = timed([&] { return pslgrow::cayley_growth(gens, 64); }, p_ms);
        report("cayley_growth p=" + std::to_string(p), s_ms, p_ms,
               serial.balls == parallel.balls && serial.spheres == parallel.spheres);
    }

    {
        double s_ms = 0, p_ms = 0;
        auto sig = pslgrow::parse_signature("1:3");
        auto serial = timed([&] { return pslgrow::serial::find_epimorphism(sig, 23, 100000, 7); }, s_ms);
        auto parallel = timed([&] { return pslgrow::find_epimorphism(sig, 23, 100000, 7); }, p_ms);
        bool equal = serial.status == parallel.status &&
                     (!serial.witness || serial.witness->images == parallel.witness->images);
        report("find_epimorphism 1:3 p=23", s_ms, p_ms, equal);
    }

    return 0;
}

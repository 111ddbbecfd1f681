#include <cstdlib>
#include <string>

#include "shapesphere/batch.hpp"

namespace shapesphere::batch {

namespace {

struct Backend {
    UStarBatchFn ustar;
    KgBatchFn kg;
    std::string name;
};

Backend resolve() {
    Backend b{u_star_batch_scalar(), gradient_curvature_batch_scalar(), "scalar"};
    bool want_avx2 = false;
#if defined(__x86_64__) || defined(_M_X64)
    want_avx2 = __builtin_cpu_supports("avx2");
#endif
    if (const char* env = std::getenv("SHAPESPHERE_SIMD")) {
        const std::string v(env);
        if (v == "scalar") want_avx2 = false;
        else if (v == "avx2") want_avx2 = true;
    }
    if (want_avx2 && u_star_batch_avx2()) {
        b = {u_star_batch_avx2(), gradient_curvature_batch_avx2(), "avx2"};
    }
    return b;
}

const Backend& backend() {
    static const Backend b = resolve();
    return b;
}

} // namespace

UStarBatchFn u_star_batch() { return backend().ustar; }
KgBatchFn gradient_curvature_batch() { return backend().kg; }
const std::string& active_backend() { return backend().name; }

} // namespace shapesphere::batch

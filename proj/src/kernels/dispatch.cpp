#include <stdexcept>
#include <string>

#include "qhp/kernels.hpp"

namespace qhp::kernels {

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(QHP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& table_for(Isa isa) {
    if (!isa_available(isa)) {
        throw std::invalid_argument("kernel variant not available: " + std::string(isa_name(isa)));
    }
#if defined(QHP_HAVE_AVX2)
    if (isa == Isa::avx2) return avx2::table();
#endif
    return scalar::table();
}

const KernelTable& active() {
    static const KernelTable& chosen =
        isa_available(Isa::avx2) ? table_for(Isa::avx2) : table_for(Isa::scalar);
    return chosen;
}

}  // namespace qhp::kernels

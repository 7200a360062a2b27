#pragma once

#include <cstdint>
#include <iosfwd>
#include <variant>
#include <vector>

#include "entrocone/cmatrix.hpp"
#include "entrocone/entropy_vector.hpp"
#include "entrocone/exec.hpp"
#include "entrocone/party.hpp"
#include "entrocone/stab.hpp"

namespace entrocone::quantum {

// Tensor factorization of a product Hilbert space, one factor per party.
struct HilbertFactorization {
    std::vector<long> dims;

    long total() const;  // product, guarded to <= 4096
    int factors() const { return static_cast<int>(dims.size()); }
};

class DensityMatrix {
public:
    // Validates Hermiticity (1e-10) and unit trace (1e-10). Positivity is
    // enforced where eigenvalues are consumed (clamped at 1e-10).
    DensityMatrix(HilbertFactorization fact, CMatrix m);

    const HilbertFactorization& factorization() const { return fact_; }
    const CMatrix& matrix() const { return m_; }

private:
    HilbertFactorization fact_;
    CMatrix m_;
};

struct PureState {
    HilbertFactorization fact;
    std::vector<cplx> amplitudes;  // unit norm within 1e-12

    void validate() const;
};

DensityMatrix to_density(const PureState& psi);

// Reduced state on the factors in `keep` (nonempty subset of factor indices).
DensityMatrix partial_trace(const DensityMatrix& rho, mask_t keep);

// -sum lambda log2 lambda over eigenvalues > 1e-10.
double von_neumann_entropy(const DensityMatrix& rho);

// All 2^N - 1 reduced entropies, factors grouped into parties by
// factor_party (identity grouping: factor i -> party i).
EntropyVector entropy_vector(const DensityMatrix& rho, const PartySystem& parties,
                             const std::vector<int>& factor_party,
                             ExecPolicy exec = ExecPolicy::parallel);
EntropyVector entropy_vector(const DensityMatrix& rho, const PartySystem& parties,
                             ExecPolicy exec = ExecPolicy::parallel);
// Pure input: result is flagged pure.
EntropyVector entropy_vector(const PureState& psi, const PartySystem& parties,
                             ExecPolicy exec = ExecPolicy::parallel);

// Spectral purification; the appended reference factor has dimension
// rank(rho) (>= 1).
PureState purify(const DensityMatrix& rho);

// Discrete Weyl pair on dimension d: X|j> = |j+1 mod d>, Z|j> = w^j |j>.
struct WeylPair {
    CMatrix x, z;
};
WeylPair weyl_operators(long d);

struct StabiliserProjector {
    DensityMatrix state;  // projector normalized by its trace
    long rank = 0;        // trace of the projector
};

// P = prod_i (1/p) sum_k (phase_i g_i)^k with phase_i = w^{phase_exponents[i]}.
// For p = 2 each generator matrix carries i^{x.z} so it is Hermitian.
// Throws when the phase assignment yields the zero projector.
StabiliserProjector stabiliser_projector(const stab::StabiliserGroup& g,
                                         const std::vector<unsigned>& phase_exponents);

// Eq.-style 4-qubit Ingleton violator:
// 1/2 |psi><psi| + 1/4 |1010><1010| + 1/4 |1001><1001|,
// |psi> = (|0000> + |1111>)/sqrt(2).
DensityMatrix ingleton_violating_state();

// Seeded, platform-independent random states (Box-Muller over mt19937_64).
PureState random_pure_state(std::uint64_t seed, const HilbertFactorization& fact);
// Tracial mixture of 2..4 random pure states.
DensityMatrix random_density(std::uint64_t seed, const HilbertFactorization& fact);

// Text format: "dims: d_1 ... d_N", then "i j re im" rows (density) or
// "i re im" rows (amplitudes); re/im accept p/q rationals.
void write_density(std::ostream& out, const DensityMatrix& rho);
void write_pure(std::ostream& out, const PureState& psi);
std::variant<DensityMatrix, PureState> read_state(std::istream& in);

}  // namespace entrocone::quantum

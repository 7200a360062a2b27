#include "entrocone/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace entrocone::quantum {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kEigenClamp = 1e-10;

double parse_number(const std::string& s) {
    if (s.find('/') != std::string::npos) return to_double(parse_rational(s));
    return std::stod(s);
}

}  // namespace

long HilbertFactorization::total() const {
    long d = 1;
    for (long dx : dims) {
        if (dx < 1) throw std::invalid_argument("factor dimension must be >= 1");
        d *= dx;
        if (d > 4096) throw std::invalid_argument("total dimension exceeds 4096");
    }
    return d;
}

DensityMatrix::DensityMatrix(HilbertFactorization fact, CMatrix m)
    : fact_(std::move(fact)), m_(std::move(m)) {
    if (static_cast<long>(m_.size()) != fact_.total())
        throw std::invalid_argument("matrix side does not match factorization");
    if (m_.hermiticity_defect() > kHermTol)
        throw std::invalid_argument("density matrix is not Hermitian within 1e-10");
    if (std::abs(m_.trace() - cplx(1.0)) > kTraceTol)
        throw std::invalid_argument("density matrix trace differs from 1");
}

void PureState::validate() const {
    if (static_cast<long>(amplitudes.size()) != fact.total())
        throw std::invalid_argument("amplitude count does not match factorization");
    double norm2 = 0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw std::invalid_argument("pure state is not normalized within 1e-12");
}

DensityMatrix to_density(const PureState& psi) {
    psi.validate();
    const std::size_t d = psi.amplitudes.size();
    CMatrix m(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m.at(i, j) = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
    return DensityMatrix(psi.fact, std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix& rho, mask_t keep) {
    const auto& dims = rho.factorization().dims;
    const int nf = rho.factorization().factors();
    if (keep == 0) throw std::invalid_argument("partial trace requires a nonempty keep set");
    if (keep >= (mask_t{1} << nf)) throw std::invalid_argument("keep mask outside factors");

    // strides with factor 0 most significant
    std::vector<long> stride(nf, 1);
    for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

    std::vector<int> kept, traced;
    for (int f = 0; f < nf; ++f) ((keep >> f) & 1 ? kept : traced).push_back(f);

    long dk = 1, dt = 1;
    for (int f : kept) dk *= dims[f];
    for (int f : traced) dt *= dims[f];

    // composite index = base_keep[a] + base_trace[t]
    std::vector<long> base_keep(dk, 0), base_trace(dt, 0);
    for (long a = 0; a < dk; ++a) {
        long rest = a;
        for (int i = static_cast<int>(kept.size()) - 1; i >= 0; --i) {
            int f = kept[i];
            base_keep[a] += (rest % dims[f]) * stride[f];
            rest /= dims[f];
        }
    }
    for (long t = 0; t < dt; ++t) {
        long rest = t;
        for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
            int f = traced[i];
            base_trace[t] += (rest % dims[f]) * stride[f];
            rest /= dims[f];
        }
    }

    CMatrix out(dk);
    const CMatrix& m = rho.matrix();
    for (long a = 0; a < dk; ++a)
        for (long b = 0; b < dk; ++b) {
            cplx s = 0;
            for (long t = 0; t < dt; ++t)
                s += m.at(base_keep[a] + base_trace[t], base_keep[b] + base_trace[t]);
            out.at(a, b) = s;
        }

    HilbertFactorization fact;
    for (int f : kept) fact.dims.push_back(dims[f]);
    return DensityMatrix(std::move(fact), std::move(out));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    auto ev = hermitian_eigenvalues(rho.matrix());
    double s = 0;
    for (double l : ev) {
        if (l < -1e-8) throw std::domain_error("density matrix has a negative eigenvalue");
        if (l > kEigenClamp) s -= l * std::log2(l);
    }
    return s;
}

EntropyVector entropy_vector(const DensityMatrix& rho, const PartySystem& parties,
                             const std::vector<int>& factor_party, ExecPolicy exec) {
    if (parties.size() > 6)
        throw std::invalid_argument("entropy vectors supported for at most 6 parties");
    if (factor_party.size() != static_cast<std::size_t>(rho.factorization().factors()))
        throw std::invalid_argument("factor -> party map size mismatch");
    for (int party : factor_party)
        if (party < 0 || party >= parties.size())
            throw std::invalid_argument("factor assigned to unknown party");

    const mask_t full = parties.full_mask();
    std::vector<double> bits(size_t{1} << parties.size(), 0.0);

    auto one_subset = [&](mask_t j) {
        mask_t keep = 0;
        for (std::size_t f = 0; f < factor_party.size(); ++f)
            if (j & (mask_t{1} << factor_party[f])) keep |= mask_t{1} << f;
        if (keep == (mask_t{1} << factor_party.size()) - 1)
            return von_neumann_entropy(rho);
        return von_neumann_entropy(partial_trace(rho, keep));
    };

    if (exec == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long j = 1; j <= static_cast<long long>(full); ++j)
            bits[j] = one_subset(static_cast<mask_t>(j));
    } else {
        for (mask_t j = 1; j <= full; ++j) bits[j] = one_subset(j);
    }
    return EntropyVector::numeric(parties, std::move(bits));
}

EntropyVector entropy_vector(const DensityMatrix& rho, const PartySystem& parties,
                             ExecPolicy exec) {
    std::vector<int> identity(rho.factorization().factors());
    for (std::size_t f = 0; f < identity.size(); ++f) identity[f] = static_cast<int>(f);
    return entropy_vector(rho, parties, identity, exec);
}

EntropyVector entropy_vector(const PureState& psi, const PartySystem& parties,
                             ExecPolicy exec) {
    auto v = entropy_vector(to_density(psi), parties, exec);
    std::vector<double> bits(size_t{1} << parties.size());
    for (mask_t j = 0; j <= parties.full_mask(); ++j) bits[j] = v.bits(j);
    return EntropyVector::numeric(parties, std::move(bits), /*pure=*/true);
}

PureState purify(const DensityMatrix& rho) {
    auto eig = hermitian_eigensystem(rho.matrix());
    const std::size_t d = rho.matrix().size();
    std::vector<std::size_t> kept;  // descending eigenvalue order
    for (std::size_t i = d; i-- > 0;)
        if (eig.values[i] > kEigenClamp) kept.push_back(i);
    const std::size_t rank = std::max<std::size_t>(kept.size(), 1);

    PureState psi;
    psi.fact = rho.factorization();
    psi.fact.dims.push_back(static_cast<long>(rank));
    psi.amplitudes.assign(d * rank, 0.0);
    if (kept.empty()) throw std::domain_error("cannot purify the zero matrix");
    for (std::size_t k = 0; k < kept.size(); ++k) {
        const double w = std::sqrt(eig.values[kept[k]]);
        for (std::size_t i = 0; i < d; ++i)
            psi.amplitudes[i * rank + k] = w * eig.vectors.at(i, kept[k]);
    }
    // rounding can leave the norm slightly off 1
    double norm2 = 0;
    for (const auto& a : psi.amplitudes) norm2 += std::norm(a);
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& a : psi.amplitudes) a *= scale;
    return psi;
}

WeylPair weyl_operators(long d) {
    if (d < 2) throw std::invalid_argument("Weyl operators need dimension >= 2");
    WeylPair w{CMatrix(d), CMatrix(d)};
    const double theta = 2.0 * std::numbers::pi / static_cast<double>(d);
    for (long j = 0; j < d; ++j) {
        w.x.at((j + 1) % d, j) = 1.0;
        w.z.at(j, j) = std::polar(1.0, theta * static_cast<double>(j));
    }
    // fundamental commutation relation X Z = w Z X
    CMatrix xz = w.x * w.z;
    CMatrix zx = w.z * w.x;
    zx *= std::polar(1.0, theta);
    if (xz.max_abs_diff(zx) > 1e-12)
        throw std::logic_error("Weyl commutation relation failed");
    return w;
}

namespace {

// Action of X^x Z^z (times i^{x.z} for p = 2) as a generalized permutation:
// basis state j maps to phase[j] * |perm[j]>.
struct WeylAction {
    std::vector<long> perm;
    std::vector<cplx> phase;
};

WeylAction weyl_action(const stab::PauliElement& g, long dim) {
    const unsigned p = g.p;
    const std::size_t n = g.x.size();
    WeylAction act{std::vector<long>(dim), std::vector<cplx>(dim)};
    const double theta = 2.0 * std::numbers::pi / static_cast<double>(p);

    unsigned long xz = 0;
    for (std::size_t q = 0; q < n; ++q) xz += g.x[q] * g.z[q];
    // p = 2: i^{x.z} per overlapping qudit makes the generator Hermitian
    const cplx herm = (p == 2) ? std::pow(cplx(0.0, 1.0), static_cast<double>(xz % 4))
                               : cplx(1.0);

    for (long j = 0; j < dim; ++j) {
        long rest = j, target = 0, stride = 1;
        unsigned long zdot = 0;
        // digits with qudit n-1 least significant
        for (std::size_t qi = n; qi-- > 0;) {
            long digit = rest % p;
            rest /= p;
            zdot += g.z[qi] * digit;
            target += stride * ((digit + g.x[qi]) % p);
            stride *= p;
        }
        act.perm[j] = target;
        act.phase[j] = herm * std::polar(1.0, theta * static_cast<double>(zdot % p));
    }
    return act;
}

}  // namespace

StabiliserProjector stabiliser_projector(const stab::StabiliserGroup& g,
                                         const std::vector<unsigned>& phase_exponents) {
    if (phase_exponents.size() != g.generators.size())
        throw std::invalid_argument("one phase exponent per generator required");
    long dim = 1;
    for (std::size_t q = 0; q < g.qudits; ++q) {
        dim *= g.prime;
        if (dim > 4096) throw std::invalid_argument("total dimension exceeds 4096");
    }
    const double theta = 2.0 * std::numbers::pi / static_cast<double>(g.prime);

    CMatrix acc = CMatrix::identity(dim);
    for (std::size_t i = 0; i < g.generators.size(); ++i) {
        const auto act = weyl_action(g.generators[i], dim);
        const cplx root = std::polar(1.0, theta * static_cast<double>(phase_exponents[i] % g.prime));
        // acc <- (1/p) sum_k (root * W)^k acc
        CMatrix sum = acc;
        CMatrix power = acc;
        for (unsigned k = 1; k < g.prime; ++k) {
            CMatrix next(dim);
            for (long row = 0; row < dim; ++row) {
                const long dst = act.perm[row];
                const cplx f = root * act.phase[row];
                for (long col = 0; col < dim; ++col) next.at(dst, col) = f * power.at(row, col);
            }
            power = std::move(next);
            sum += power;
        }
        sum *= cplx(1.0 / static_cast<double>(g.prime));
        acc = std::move(sum);
    }

    if (acc.hermiticity_defect() > 1e-9)
        throw std::logic_error("stabiliser projector is not Hermitian; check the group");
    const double tr = acc.trace().real();
    const long rank = std::lround(tr);
    if (rank <= 0) throw std::invalid_argument("inconsistent phase assignment: zero projector");

    acc *= cplx(1.0 / tr);
    HilbertFactorization fact;
    fact.dims.assign(g.qudits, static_cast<long>(g.prime));
    return StabiliserProjector{DensityMatrix(std::move(fact), std::move(acc)), rank};
}

DensityMatrix ingleton_violating_state() {
    CMatrix m(16);
    const cplx quarter(0.25);
    // 1/2 |psi><psi| with |psi> = (|0000> + |1111>)/sqrt(2): indices 0 and 15
    m.at(0, 0) += quarter;
    m.at(0, 15) += quarter;
    m.at(15, 0) += quarter;
    m.at(15, 15) += quarter;
    m.at(10, 10) += quarter;  // |1010>
    m.at(9, 9) += quarter;    // |1001>
    return DensityMatrix(HilbertFactorization{{2, 2, 2, 2}}, std::move(m));
}

namespace {

// deterministic standard normals (Box-Muller over the raw 64-bit stream)
struct NormalSource {
    std::mt19937_64 rng;
    bool have = false;
    double spare = 0;

    explicit NormalSource(std::uint64_t seed) : rng(seed) {}

    double uniform() {  // (0, 1]
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    }
    double operator()() {
        if (have) {
            have = false;
            return spare;
        }
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare = r * std::sin(a);
        have = true;
        return r * std::cos(a);
    }
};

}  // namespace

PureState random_pure_state(std::uint64_t seed, const HilbertFactorization& fact) {
    NormalSource normal(seed);
    const long d = fact.total();
    PureState psi{fact, std::vector<cplx>(d)};
    double norm2 = 0;
    for (auto& a : psi.amplitudes) {
        a = cplx(normal(), normal());
        norm2 += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& a : psi.amplitudes) a *= scale;
    return psi;
}

DensityMatrix random_density(std::uint64_t seed, const HilbertFactorization& fact) {
    std::mt19937_64 rng(seed);
    const int count = 2 + static_cast<int>(rng() % 3);
    std::vector<double> weights(count);
    double total = 0;
    for (auto& w : weights) {
        w = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
        total += w;
    }
    const long d = fact.total();
    CMatrix m(d);
    for (int s = 0; s < count; ++s) {
        auto psi = random_pure_state(rng(), fact);
        const double w = weights[s] / total;
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j)
                m.at(i, j) += w * psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
    }
    return DensityMatrix(fact, std::move(m));
}

void write_density(std::ostream& out, const DensityMatrix& rho) {
    out << "dims:";
    for (long d : rho.factorization().dims) out << ' ' << d;
    out << '\n';
    const auto& m = rho.matrix();
    char buf[128];
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m.at(i, j) == cplx(0.0)) continue;
            std::snprintf(buf, sizeof buf, "%zu %zu %.17g %.17g\n", i, j, m.at(i, j).real(),
                          m.at(i, j).imag());
            out << buf;
        }
}

void write_pure(std::ostream& out, const PureState& psi) {
    out << "dims:";
    for (long d : psi.fact.dims) out << ' ' << d;
    out << '\n';
    char buf[96];
    for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) {
        if (psi.amplitudes[i] == cplx(0.0)) continue;
        std::snprintf(buf, sizeof buf, "%zu %.17g %.17g\n", i, psi.amplitudes[i].real(),
                      psi.amplitudes[i].imag());
        out << buf;
    }
}

std::variant<DensityMatrix, PureState> read_state(std::istream& in) {
    std::string line;
    HilbertFactorization fact;
    bool have_dims = false;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream ss(line);
        std::string word;
        if (!(ss >> word)) continue;
        if (word == "dims:") {
            long d;
            while (ss >> d) fact.dims.push_back(d);
            if (fact.dims.empty()) throw std::invalid_argument("empty dims line");
            fact.total();  // dimension guard
            have_dims = true;
        } else {
            if (!have_dims) throw std::invalid_argument("dims line must come first");
            std::vector<std::string> fields{word};
            while (ss >> word) fields.push_back(word);
            if (fields.size() != 3 && fields.size() != 4)
                throw std::invalid_argument("state rows need 3 (pure) or 4 (density) fields");
            rows.push_back(std::move(fields));
        }
    }
    if (!have_dims || rows.empty()) throw std::invalid_argument("empty state file");
    const long d = fact.total();
    const bool pure = rows.front().size() == 3;
    for (const auto& r : rows)
        if ((r.size() == 3) != pure)
            throw std::invalid_argument("mixed pure/density rows in state file");

    if (pure) {
        PureState psi{fact, std::vector<cplx>(d, cplx(0.0))};
        for (const auto& r : rows) {
            long i = std::stol(r[0]);
            if (i < 0 || i >= d) throw std::invalid_argument("amplitude index out of range");
            psi.amplitudes[i] = cplx(parse_number(r[1]), parse_number(r[2]));
        }
        psi.validate();
        return psi;
    }
    CMatrix m(d);
    for (const auto& r : rows) {
        long i = std::stol(r[0]), j = std::stol(r[1]);
        if (i < 0 || i >= d || j < 0 || j >= d)
            throw std::invalid_argument("matrix index out of range");
        m.at(i, j) = cplx(parse_number(r[2]), parse_number(r[3]));
    }
    return DensityMatrix(std::move(fact), std::move(m));
}

}  // namespace entrocone::quantum

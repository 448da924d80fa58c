#pragma once

// Truncated Krein-Fock space over binned modes. Each bin carries physical
// (a), gauge (b) and ghost (c) excitations; the single-excitation Gram is
// a-a diagonal and b-c off-diagonal, each with weight 1 / delta_beta.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fiber_types.hpp"

namespace gbfiber::quantum {

using cplx = std::complex<double>;

enum class Excitation { Physical = 0, Gauge = 1, Ghost = 2 };

enum class GbClass { Ghost, Gauge, Physical };

inline std::string to_string(GbClass c) {
    switch (c) {
    case GbClass::Ghost: return "ghost";
    case GbClass::Gauge: return "gauge";
    case GbClass::Physical: return "physical";
    }
    return "unknown";
}

inline constexpr int kDefaultCap = 4;

struct ModeBin {
    fiber::ModeKey key;
    double beta_center = 0.0;
    double width = 1.0;
    // free label separating otherwise identical bins (e.g. interferometer ports)
    std::string channel;

    double weight() const { return 1.0 / width; }
};

class ModeSpace {
public:
    explicit ModeSpace(std::vector<ModeBin> bins, int cap = kDefaultCap)
        : bins_(std::move(bins)), cap_(cap) {
        if (cap_ < 0) throw DomainError("ModeSpace: negative occupation cap");
        for (std::size_t i = 0; i < bins_.size(); ++i) {
            if (!(bins_[i].width > 0.0)) throw DomainError("ModeSpace: bin widths must be positive");
            for (std::size_t j = 0; j < i; ++j) {
                const auto& a = bins_[i];
                const auto& b = bins_[j];
                if (a.key.m != b.key.m || a.key.kappa != b.key.kappa || a.channel != b.channel)
                    continue;
                const double gap = std::abs(a.beta_center - b.beta_center);
                if (gap < 0.5 * (a.width + b.width) * (1.0 - 1e-12))
                    throw DomainError("ModeSpace: overlapping bins for the same (m, kappa, channel)");
            }
        }
    }

    std::size_t bin_count() const { return bins_.size(); }
    std::size_t slot_count() const { return 3 * bins_.size(); }
    int cap() const { return cap_; }
    const ModeBin& bin(std::size_t i) const { return bins_.at(i); }

    static std::size_t slot(Excitation kind, std::size_t bin) {
        return 3 * bin + static_cast<std::size_t>(kind);
    }
    static Excitation kind_of(std::size_t slot) { return static_cast<Excitation>(slot % 3); }

    // Single-excitation pseudo-inner product <slot_i | slot_j>.
    double gram(std::size_t i, std::size_t j) const {
        if (i / 3 != j / 3) return 0.0;
        const double w = bins_[i / 3].weight();
        const auto ki = kind_of(i), kj = kind_of(j);
        if (ki == Excitation::Physical && kj == Excitation::Physical) return w;
        if ((ki == Excitation::Gauge && kj == Excitation::Ghost) ||
            (ki == Excitation::Ghost && kj == Excitation::Gauge))
            return w;
        return 0.0;
    }

    bool operator==(const ModeSpace& o) const {
        if (cap_ != o.cap_ || bins_.size() != o.bins_.size()) return false;
        for (std::size_t i = 0; i < bins_.size(); ++i) {
            const auto& a = bins_[i];
            const auto& b = o.bins_[i];
            if (a.key.m != b.key.m || a.key.kappa != b.key.kappa || a.channel != b.channel ||
                a.beta_center != b.beta_center || a.width != b.width)
                return false;
        }
        return true;
    }

private:
    std::vector<ModeBin> bins_;
    int cap_;
};

using Occupation = std::vector<int>;
using SpacePtr = std::shared_ptr<const ModeSpace>;

inline SpacePtr make_space(std::vector<ModeBin> bins, int cap = kDefaultCap) {
    return std::make_shared<const ModeSpace>(std::move(bins), cap);
}

// Superposition of normalized occupation-number states.
class KreinState {
public:
    explicit KreinState(SpacePtr space) : space_(std::move(space)) {
        if (!space_) throw DomainError("KreinState: null mode space");
    }

    static KreinState vacuum(const SpacePtr& space) {
        KreinState s(space);
        s.amps_[Occupation(space->slot_count(), 0)] = 1.0;
        return s;
    }

    const ModeSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    const std::map<Occupation, cplx>& amplitudes() const { return amps_; }

    void add(const Occupation& n, cplx amp) {
        if (n.size() != space_->slot_count()) throw DomainError("KreinState: occupation size mismatch");
        if (amp == cplx(0.0)) return;
        amps_[n] += amp;
    }

    KreinState& operator+=(const KreinState& o) {
        check_same(o);
        for (const auto& [n, a] : o.amps_) amps_[n] += a;
        return *this;
    }

    KreinState operator+(const KreinState& o) const {
        KreinState s = *this;
        s += o;
        return s;
    }

    KreinState operator*(cplx c) const {
        KreinState s(space_);
        for (const auto& [n, a] : amps_) s.amps_[n] = c * a;
        return s;
    }

    KreinState operator-(const KreinState& o) const { return *this + o * cplx(-1.0); }

    double max_amplitude() const {
        double m = 0.0;
        for (const auto& [n, a] : amps_) m = std::max(m, std::abs(a));
        return m;
    }

    void check_same(const KreinState& o) const {
        if (space_ != o.space_ && !(*space_ == *o.space_)) throw DomainError("KreinState: states live in different mode spaces");
    }

private:
    SpacePtr space_;
    std::map<Occupation, cplx> amps_;
};

inline KreinState create(const KreinState& state, Excitation kind, std::size_t bin) {
    const auto& space = state.space();
    if (bin >= space.bin_count()) throw DomainError("create: bin index out of range");
    const auto slot = ModeSpace::slot(kind, bin);
    KreinState out(state.space_ptr());
    for (const auto& [n, a] : state.amplitudes()) {
        if (a == cplx(0.0)) continue;
        if (std::accumulate(n.begin(), n.end(), 0) + 1 > space.cap())
            throw CapacityError("create: occupation cap " + std::to_string(space.cap()) + " exceeded");
        Occupation m = n;
        m[slot] += 1;
        out.add(m, a * std::sqrt(static_cast<double>(m[slot])));
    }
    return out;
}

// alpha_k |n> = sum_l G_kl sqrt(n_l) |n - e_l>, so [alpha_k, alpha_l^dagger] = G_kl.
inline KreinState annihilate(const KreinState& state, Excitation kind, std::size_t bin) {
    const auto& space = state.space();
    if (bin >= space.bin_count()) throw DomainError("annihilate: bin index out of range");
    const auto k = ModeSpace::slot(kind, bin);
    KreinState out(state.space_ptr());
    for (const auto& [n, a] : state.amplitudes()) {
        for (std::size_t l = 3 * bin; l < 3 * bin + 3; ++l) {
            const double g = space.gram(k, l);
            if (g == 0.0 || n[l] == 0) continue;
            Occupation m = n;
            m[l] -= 1;
            out.add(m, a * g * std::sqrt(static_cast<double>(n[l])));
        }
    }
    return out;
}

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// <n | m> between normalized occupation states: permanent of the Gram
// restricted to the occupied slots, over sqrt(prod n! prod m!).
inline double occupation_product(const ModeSpace& space, const Occupation& n, const Occupation& m) {
    std::vector<std::size_t> rows, cols;
    double norm = 1.0;
    for (std::size_t s = 0; s < n.size(); ++s) {
        rows.insert(rows.end(), n[s], s);
        cols.insert(cols.end(), m[s], s);
        norm *= factorial(n[s]) * factorial(m[s]);
    }
    if (rows.size() != cols.size()) return 0.0;
    std::vector<std::size_t> perm(cols.size());
    std::iota(perm.begin(), perm.end(), 0);
    double total = 0.0;
    do {
        double term = 1.0;
        for (std::size_t r = 0; r < rows.size() && term != 0.0; ++r)
            term *= space.gram(rows[r], cols[perm[r]]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total / std::sqrt(norm);
}

} // namespace detail

// Antilinear in the first argument.
inline cplx pseudo_inner(const KreinState& a, const KreinState& b) {
    a.check_same(b);
    cplx sum = 0.0;
    for (const auto& [n, x] : a.amplitudes())
        for (const auto& [m, y] : b.amplitudes()) {
            const double g = detail::occupation_product(a.space(), n, m);
            if (g != 0.0) sum += std::conj(x) * y * g;
        }
    return sum;
}

inline double pseudo_norm(const KreinState& s) { return pseudo_inner(s, s).real(); }

namespace detail {

inline bool has_ghost(const KreinState& s, double tol) {
    const double floor = tol * s.max_amplitude();
    for (const auto& [n, a] : s.amplitudes()) {
        if (std::abs(a) <= floor) continue;
        for (std::size_t slot = 0; slot < n.size(); ++slot)
            if (ModeSpace::kind_of(slot) == Excitation::Ghost && n[slot] > 0) return true;
    }
    return false;
}

} // namespace detail

inline constexpr double kClassifyTolerance = 1e-12;

// Ghost if some b annihilator does not kill the state (a c excitation is
// present); otherwise Gauge for zero pseudo-norm and Physical for positive.
inline GbClass gupta_bleuler_classify(const KreinState& s) {
    if (detail::has_ghost(s, kClassifyTolerance)) return GbClass::Ghost;
    double scale = 0.0;
    for (const auto& [n, a] : s.amplitudes()) {
        double w = 1.0;
        for (std::size_t slot = 0; slot < n.size(); ++slot)
            for (int k = 0; k < n[slot]; ++k) w *= s.space().bin(slot / 3).weight();
        scale += std::norm(a) * w;
    }
    const double norm = pseudo_norm(s);
    if (std::abs(norm) <= kClassifyTolerance * scale) return GbClass::Gauge;
    if (norm < 0.0)
        throw IntegrityError("gupta_bleuler_classify: ghost-free state with negative pseudo-norm");
    return GbClass::Physical;
}

// Drops every component carrying a gauge excitation. Inner products with
// ghost-free states are unchanged; a pure gauge state maps to the zero vector.
inline KreinState gauge_quotient(const KreinState& s) {
    if (gupta_bleuler_classify(s) == GbClass::Ghost)
        throw DomainError("gauge_quotient: ghost states have no gauge-quotient representative");
    KreinState out(s.space_ptr());
    for (const auto& [n, a] : s.amplitudes()) {
        bool gauge = false;
        for (std::size_t slot = 0; slot < n.size(); ++slot)
            gauge = gauge || (ModeSpace::kind_of(slot) == Excitation::Gauge && n[slot] > 0);
        if (!gauge) out.add(n, a);
    }
    return out;
}

// a_psi^dagger = sum_bins psi(bin) delta_beta a_bin^dagger
struct WavepacketCreator {
    Excitation kind = Excitation::Physical;
    std::vector<std::size_t> bins;
    std::vector<cplx> coefficients;
};

inline WavepacketCreator wavepacket_creator(const ModeSpace& space, Excitation kind,
                                            const std::vector<std::size_t>& bins,
                                            const std::vector<cplx>& psi) {
    if (bins.size() != psi.size()) throw DomainError("wavepacket_creator: size mismatch");
    WavepacketCreator c{kind, bins, {}};
    double norm = 0.0;
    for (std::size_t k = 0; k < bins.size(); ++k) {
        const double w = space.bin(bins[k]).width;
        norm += std::norm(psi[k]) * w;
        c.coefficients.push_back(psi[k] * w);
    }
    if (std::abs(norm - 1.0) > 1e-12)
        throw DomainError("wavepacket_creator: sum |psi|^2 delta_beta must be 1");
    return c;
}

inline KreinState apply_creator(const KreinState& s, const WavepacketCreator& c) {
    KreinState out(s.space_ptr());
    for (std::size_t k = 0; k < c.bins.size(); ++k) out += create(s, c.kind, c.bins[k]) * c.coefficients[k];
    return out;
}

inline KreinState apply_annihilator(const KreinState& s, const WavepacketCreator& c) {
    KreinState out(s.space_ptr());
    for (std::size_t k = 0; k < c.bins.size(); ++k)
        out += annihilate(s, c.kind, c.bins[k]) * std::conj(c.coefficients[k]);
    return out;
}

// Linear combination sum_j alpha_j slot_j^dagger.
struct LinearCreator {
    std::vector<std::pair<std::size_t, Excitation>> modes;
    std::vector<cplx> amplitudes;
};

inline KreinState apply(const KreinState& s, const LinearCreator& c) {
    KreinState out(s.space_ptr());
    for (std::size_t k = 0; k < c.modes.size(); ++k)
        out += create(s, c.modes[k].second, c.modes[k].first) * c.amplitudes[k];
    return out;
}

// sum_{N <= cap} C^N / N! |0>
inline KreinState truncated_exponential(const SpacePtr& space, const LinearCreator& c) {
    KreinState term = KreinState::vacuum(space);
    KreinState sum = term;
    for (int n = 1; n <= space->cap(); ++n) {
        term = apply(term, c) * cplx(1.0 / n);
        sum += term;
    }
    return sum;
}

// <Phi| sum_bins (w_bin b_bin + conj(w_bin) b_bin^dagger) |Psi>
inline cplx gauge_operator_element(const KreinState& phi, const KreinState& psi,
                                   const std::vector<cplx>& weights) {
    if (weights.size() != psi.space().bin_count()) throw DomainError("gauge_operator_element: one weight per bin");
    cplx sum = 0.0;
    for (std::size_t bin = 0; bin < weights.size(); ++bin) {
        sum += weights[bin] * pseudo_inner(phi, annihilate(psi, Excitation::Gauge, bin));
        sum += std::conj(weights[bin]) * pseudo_inner(phi, create(psi, Excitation::Gauge, bin));
    }
    return sum;
}

} // namespace gbfiber::quantum

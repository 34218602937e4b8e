#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "taub/tau.hpp"
#include "taub/theories.hpp"

namespace taub::cli {

/// Named numerical tolerances. Every name has a default; overriding an
/// unknown name is an input error.
class Tolerances {
public:
    Tolerances();

    void set(const std::string& name, double value);
    [[nodiscard]] double get(const std::string& name) const;
    [[nodiscard]] const std::map<std::string, double>& all() const { return values_; }

private:
    std::map<std::string, double> values_;
};

struct Settings {
    Momenta momenta{0.25, 0.25, 0.25, 0.25};
    Complex sigma{0.2, 0.0};
    Complex twist{1.0, 0.0};
    Complex t{0.3, 0.0};
    std::optional<Complex> tbar;
    int order = 20;
    int winding = 0;
    int winding_bar = 0;
    bool nome = false;

    CorrelatorSpec spec;
    std::vector<Complex> grid;
    std::vector<double> heights;
    bool crossing = false;
    TauOptions tau;

    std::string suite;
    int count = 0;  ///< 0 selects the suite default
    std::uint64_t seed = 1;

    Tolerances tolerances;

    [[nodiscard]] Complex conjugate_side() const { return tbar ? *tbar : std::conj(t); }
};

/// Copies the tolerance entries into the numerical options they control.
void apply_tolerances(Settings& settings);

}  // namespace taub::cli

#include "settings.hpp"

#include "taub/errors.hpp"

namespace taub::cli {

Tolerances::Tolerances()
    : values_{
          // numerical budgets
          {"block_tolerance", 1e-3},
          {"tau_tail_budget", 1e-8},
          {"integrand_block_tolerance", 1e-6},
          {"quadrature_tolerance", 1e-10},
          {"quadrature_tail_budget", 1e-12},
          {"lattice_budget", 1e-12},
          // verification thresholds
          {"jimbo_fricke", 1e-9},
          {"tau_crossing_real", 1e-6},
          {"tau_crossing_complex", 1e-5},
          {"rw_crossing", 1e-4},
          {"rw_closed_form", 1e-6},
          {"at_dual_route", 1e-8},
          {"at_free_orbit", 1e-10},
          {"at_sector_permutation", 1e-6},
          {"at_monodromy", 1e-6},
          {"al_monodromy", 1e-5},
          {"al_height", 1e-5},
          {"al_residue", 1e-6},
          {"al_crossing", 1e-4},
      } {}

void Tolerances::set(const std::string& name, double value) {
    auto it = values_.find(name);
    if (it == values_.end()) throw DomainError("unknown tolerance name '" + name + "'");
    if (!(value > 0.0)) throw DomainError("tolerance '" + name + "' must be positive");
    it->second = value;
}

double Tolerances::get(const std::string& name) const { return values_.at(name); }

void apply_tolerances(Settings& settings) {
    const Tolerances& tol = settings.tolerances;
    settings.tau.block.tolerance = tol.get("block_tolerance");
    settings.tau.tail_budget = tol.get("tau_tail_budget");
    settings.spec.block.tolerance = tol.get("integrand_block_tolerance");
    settings.spec.quadrature.tolerance = tol.get("quadrature_tolerance");
    settings.spec.quadrature.tail_budget = tol.get("quadrature_tail_budget");
    settings.spec.lattice_budget = tol.get("lattice_budget");
}

}  // namespace taub::cli

#pragma once

#include <memory>
#include <string>

#include "smm/config.hpp"
#include "smm/grid.hpp"
#include "smm/kernel.hpp"

namespace smm::test {

inline ExperimentConfig preset(const std::string& name) {
    return load_config(std::string(PRESET_DIR) + "/" + name + ".json");
}

inline SemiMarkovKernel constant_kernel(double plus, double minus, double delta = 0.01) {
    return SemiMarkovKernel(HazardSpec::constant(plus), HazardSpec::constant(minus), delta);
}

inline std::shared_ptr<const Grid> small_grid(const SemiMarkovKernel& k, int n_t = 40, double T = 1.0,
                                              double p0 = 100.0, double s0 = 0.0, int n_max = -1,
                                              double tol = 1e-12) {
    GridSpec spec;
    spec.n_t = n_t;
    spec.n_max = n_max;
    spec.tol_fp = tol;
    return std::make_shared<const Grid>(p0, k.delta(), T, s0, spec, k.c1());
}

}  // namespace smm::test

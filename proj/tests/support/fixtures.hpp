#ifndef CATDIV_TESTS_FIXTURES_HPP
#define CATDIV_TESTS_FIXTURES_HPP

#include "catdiv/hjb_solver.hpp"
#include "golden.hpp"

#include <string>

namespace fixture {

inline catdiv::ModelParams canonical() {
    catdiv::ModelParams m;
    m.mu = golden::canonical::mu;
    m.sigma2 = golden::canonical::sigma2;
    m.c = golden::canonical::c;
    m.beta = golden::canonical::beta;
    m.k = golden::canonical::k;
    m.levy = catdiv::LevyMeasure::exponential(1.0);
    return m;
}

inline catdiv::ModelParams fast_discount() {
    auto m = canonical();
    m.c = golden::fast_discount::c;
    return m;
}

inline std::string data_path(const std::string& name) {
    return std::string(CATDIV_TEST_DATA_DIR) + "/" + name;
}

}  // namespace fixture

#endif  // CATDIV_TESTS_FIXTURES_HPP

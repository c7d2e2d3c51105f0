#pragma once

#include <cstdint>
#include <string>

#include "otoprv/model.hpp"

namespace otoprv {

/// Weight law for generated POIs: "uniform-int:LO:HI", "uniform-real:LO:HI" or "constant:V".
struct WeightDistribution {
    enum class Kind { UniformInt, UniformReal, Constant };
    Kind kind = Kind::UniformInt;
    double low = 1.0;
    double high = 3.0;

    /// Throws std::invalid_argument on a malformed specification.
    static WeightDistribution parse(const std::string& spec);
    std::string str() const;
};

struct GenerateOptions {
    std::size_t pois = 8;
    int fleet_size = 4;
    double budget = 30.0;
    double beta = 0.5;
    double side = 50.0;
    WeightDistribution weights;
    std::uint64_t seed = 1;
};

/// POIs uniform on a side x side square with Euclidean travel costs; deterministic per seed.
Instance generate_instance(const GenerateOptions& options);

}  // namespace otoprv

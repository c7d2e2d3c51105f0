#include "otoprv/generate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "otoprv/graph.hpp"
#include "otoprv/random.hpp"

namespace otoprv {

WeightDistribution WeightDistribution::parse(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    const auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v))
            throw std::invalid_argument("weight distribution '" + spec + "': bad number '" + s + "'");
        return v;
    };
    WeightDistribution d;
    if (parts.size() == 2 && parts[0] == "constant") {
        d.kind = Kind::Constant;
        d.low = d.high = number(parts[1]);
    } else if (parts.size() == 3 && (parts[0] == "uniform-int" || parts[0] == "uniform-real")) {
        d.kind = parts[0] == "uniform-int" ? Kind::UniformInt : Kind::UniformReal;
        d.low = number(parts[1]);
        d.high = number(parts[2]);
        if (d.kind == Kind::UniformInt && (d.low != std::floor(d.low) || d.high != std::floor(d.high)))
            throw std::invalid_argument("weight distribution '" + spec + "': integer bounds required");
        if (d.high < d.low)
            throw std::invalid_argument("weight distribution '" + spec + "': empty range");
    } else {
        throw std::invalid_argument("weight distribution '" + spec +
                                    "': expected uniform-int:LO:HI, uniform-real:LO:HI or constant:V");
    }
    if (d.low < 0.0) throw std::invalid_argument("weight distribution '" + spec + "': negative weights");
    return d;
}

std::string WeightDistribution::str() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::UniformInt: os << "uniform-int:" << low << ':' << high; break;
    case Kind::UniformReal: os << "uniform-real:" << low << ':' << high; break;
    case Kind::Constant: os << "constant:" << low; break;
    }
    return os.str();
}

Instance generate_instance(const GenerateOptions& options) {
    if (options.pois < 1) throw std::invalid_argument("at least one POI is required");
    if (!(options.side > 0.0)) throw std::invalid_argument("square side must be positive");
    Rng rng(derive_seed(options.seed, 0x6e6));
    std::uniform_real_distribution<double> coord(0.0, options.side);
    std::vector<Point> points(options.pois);
    std::vector<Poi> pois(options.pois);
    for (std::size_t i = 0; i < options.pois; ++i) {
        points[i].x = coord(rng);
        points[i].y = coord(rng);
        double w = options.weights.low;
        switch (options.weights.kind) {
        case WeightDistribution::Kind::UniformInt:
            w = static_cast<double>(std::uniform_int_distribution<long>(
                static_cast<long>(options.weights.low), static_cast<long>(options.weights.high))(rng));
            break;
        case WeightDistribution::Kind::UniformReal:
            w = std::uniform_real_distribution<double>(options.weights.low, options.weights.high)(rng);
            break;
        case WeightDistribution::Kind::Constant: break;
        }
        pois[i] = Poi{static_cast<PoiId>(i), w, points[i]};
    }
    return Instance(std::move(pois), euclidean_matrix(points), options.fleet_size, options.budget,
                    options.beta);
}

}  // namespace otoprv

#include "voltcast/innovation.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "voltcast/error.hpp"

namespace voltcast {

std::string to_string(Innovation dist) {
    switch (dist) {
        case Innovation::normal: return "normal";
        case Innovation::student_t: return "student_t";
        case Innovation::std_gamma: return "gamma";
    }
    return "normal";
}

Innovation innovation_from_string(const std::string& name) {
    if (name == "normal") return Innovation::normal;
    if (name == "student_t" || name == "t") return Innovation::student_t;
    if (name == "gamma" || name == "std_gamma") return Innovation::std_gamma;
    throw usage_error("unknown innovation distribution '" + name + "'");
}

double default_shape(Innovation dist) {
    switch (dist) {
        case Innovation::normal: return std::numeric_limits<double>::quiet_NaN();
        case Innovation::student_t: return 8.0;
        case Innovation::std_gamma: return 4.0;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double sample_innovation(std::mt19937_64& rng, Innovation dist, double shape) {
    switch (dist) {
        case Innovation::normal: {
            std::normal_distribution<double> n(0.0, 1.0);
            return n(rng);
        }
        case Innovation::student_t: {
            // t_nu scaled to unit variance; requires nu > 2.
            std::student_t_distribution<double> t(shape);
            return t(rng) * std::sqrt((shape - 2.0) / shape);
        }
        case Innovation::std_gamma: {
            std::gamma_distribution<double> g(shape, 1.0);
            return (g(rng) - shape) / std::sqrt(shape);
        }
    }
    return 0.0;
}

double innovation_log_density(double z, Innovation dist, double shape) {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    switch (dist) {
        case Innovation::normal:
            return -0.5 * (std::log(2.0 * std::numbers::pi) + z * z);
        case Innovation::student_t: {
            if (!(shape > 2.0)) return neg_inf;
            double c = std::lgamma(0.5 * (shape + 1.0)) - std::lgamma(0.5 * shape) -
                       0.5 * std::log(std::numbers::pi * (shape - 2.0));
            return c - 0.5 * (shape + 1.0) * std::log1p(z * z / (shape - 2.0));
        }
        case Innovation::std_gamma: {
            if (!(shape > 0.0)) return neg_inf;
            double x = shape + z * std::sqrt(shape);
            if (x <= 0.0) return neg_inf;
            return 0.5 * std::log(shape) + (shape - 1.0) * std::log(x) - x - std::lgamma(shape);
        }
    }
    return neg_inf;
}

}  // namespace voltcast

#pragma once

#include <random>
#include <string>

namespace voltcast {

/// Innovation distributions for simulation and likelihood work. All are
/// standardized to zero mean and unit variance; `shape` is the Student-t
/// degrees of freedom (> 2) or the gamma shape (> 0), ignored for normal.
enum class Innovation { normal, student_t, std_gamma };

std::string to_string(Innovation dist);
Innovation innovation_from_string(const std::string& name);

/// Draws one standardized innovation.
double sample_innovation(std::mt19937_64& rng, Innovation dist, double shape);

/// Log density of the standardized innovation at z. Returns -inf outside the
/// support (the standardized gamma is bounded below at -sqrt(shape)).
double innovation_log_density(double z, Innovation dist, double shape);

/// Default shape used when the caller does not estimate one.
double default_shape(Innovation dist);

}  // namespace voltcast

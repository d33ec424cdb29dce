#pragma once

#include <string>

#include "drough/rough_driver.hpp"

namespace drough {

/*
 * Driver cache format ("DRPD1"):
 *   magic bytes "DRPD1"
 *   little-endian u64: d, n_points, delay_steps, subgrid_factor, flavor code, seed
 *   little-endian f64: dt, hurst,
 *     then X (n_points * d), cell_area ((n_points-1) * d * d),
 *     cell_delayed_area ((n_points-1-delay_steps) * d * d) in index order.
 * Round trips are bitwise exact. Writes are whole-file atomic (temp + rename).
 */

void save_driver(const DelayedRoughDriver& drv, const std::string& path);
DelayedRoughDriver load_driver(const std::string& path);

}  // namespace drough

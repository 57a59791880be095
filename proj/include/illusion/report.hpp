#pragma once

#include "illusion/simulator.hpp"

#include <ostream>
#include <string>

namespace illusion {

inline constexpr const char *kCsvHeader = "stage,omega_r_x,omega_r_y,iota_x,iota_y,e_x,e_y,u_r_x,u_r_y,u_p_x,u_p_y,"
                                          "s1,s2,s3,r1,r2,r3,plausible,illusion";

/// Fixed "%.12g" rendering used for every CSV number.
std::string format_number(double v);

void write_csv(std::ostream &out, const TrajectoryLog &log);

/// True position and estimate overlaid in the plane.
void write_trajectory_svg(std::ostream &out, const TrajectoryLog &log, const Scenario &s);

/// Producer action components against stage.
void write_action_svg(std::ostream &out, const TrajectoryLog &log);

} // namespace illusion

#pragma once

#include <string>
#include <vector>

#include "parkplan/guess.hpp"
#include "parkplan/search.hpp"
#include "parkplan/simtrack.hpp"
#include "parkplan/smooth.hpp"

namespace parkplan {

// CSV round-trips for the CLI surfaces: grid paths as "col,row" lines,
// smooth paths as "x,y", trajectories as "k,x,y,v,psi,a,delta", drive
// logs as "t,x,y,v,psi,a,delta". Each file carries a header row.

void write_path_csv(const std::string& path, const Path& cells);
Path read_path_csv(const std::string& path);

void write_smooth_csv(const std::string& path, const SmoothPath& points);
SmoothPath read_smooth_csv(const std::string& path);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);
void write_trajectory_csv(const std::string& path,
                          const std::vector<VehicleState>& states,
                          const std::vector<ControlCommand>& controls);

void write_log_csv(const std::string& path, const DriveLog& log);

}  // namespace parkplan

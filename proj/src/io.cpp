#include "parkplan/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "parkplan/errors.hpp"

namespace parkplan {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read: " + path);
  return in;
}

std::vector<double> split_doubles(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    out.push_back(std::stod(field));
  }
  return out;
}

}  // namespace

void write_path_csv(const std::string& path, const Path& cells) {
  auto out = open_out(path);
  out << "col,row\n";
  for (const Cell& c : cells) out << c.col << "," << c.row << "\n";
}

Path read_path_csv(const std::string& path) {
  auto in = open_in(path);
  Path cells;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto v = split_doubles(line);
    if (v.size() != 2) throw ParseError("path csv: expected col,row");
    cells.push_back({static_cast<int>(v[0]), static_cast<int>(v[1])});
  }
  return cells;
}

void write_smooth_csv(const std::string& path, const SmoothPath& points) {
  auto out = open_out(path);
  out << "x,y\n";
  char buf[64];
  for (const Vec2& p : points) {
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f\n", p.x, p.y);
    out << buf;
  }
}

SmoothPath read_smooth_csv(const std::string& path) {
  auto in = open_in(path);
  SmoothPath points;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto v = split_doubles(line);
    if (v.size() != 2) throw ParseError("smooth csv: expected x,y");
    points.push_back({v[0], v[1]});
  }
  return points;
}

void write_trajectory_csv(const std::string& path,
                          const std::vector<VehicleState>& states,
                          const std::vector<ControlCommand>& controls) {
  auto out = open_out(path);
  out << "k,x,y,v,psi,a,delta\n";
  char buf[160];
  for (std::size_t k = 0; k < states.size(); ++k) {
    const ControlCommand u =
        k < controls.size() ? controls[k] : ControlCommand{};
    std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", k,
                  states[k].x, states[k].y, states[k].v, states[k].psi, u.a,
                  u.delta);
    out << buf;
  }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  write_trajectory_csv(path, traj.states, traj.controls);
}

void write_log_csv(const std::string& path, const DriveLog& log) {
  auto out = open_out(path);
  out << "t,x,y,v,psi,a,delta\n";
  char buf[160];
  for (const LogEntry& e : log.entries) {
    std::snprintf(buf, sizeof(buf), "%.3f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  e.t, e.state.x, e.state.y, e.state.v, e.state.psi, e.u.a,
                  e.u.delta);
    out << buf;
  }
}

}  // namespace parkplan

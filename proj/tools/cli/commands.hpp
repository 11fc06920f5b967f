#pragma once

// The zmc command-line front end as a library, so tests can drive the
// commands without spawning processes.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zmc/gallery.hpp"

namespace zmc::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kPreconditionUnmet = 3;
inline constexpr int kNumericFailure = 4;

inline constexpr int kReportSchemaVersion = 1;

struct SpecOptions {
  double u_max = 10.0;
  int resolution = 100;
  double margin = 1e-3;
  // f is shifted so that f(base_point) = 0; p_inf when unset
  std::optional<ExtendedPoint> base_point;
};

struct LoadedSurface {
  GalleryEntry entry;
  SpecOptions options;
};

// "name" or "name:n"
LoadedSurface load_gallery(const std::string& spec);
// A JSON surface document; errors carry line and column.
LoadedSurface load_json_text(const std::string& text, const std::string& source = "<input>");
LoadedSurface load_json_file(const std::string& path);

// Angle from a number of radians or a string "k/m pi".
Angle parse_angle_string(const std::string& s);

int cmd_classify(const LoadedSurface& s, bool json, std::ostream& out);

struct SampleOptions {
  enum class Format { Obj, Ply, Csv } format = Format::Obj;
  TAxis t_axis = TAxis::First;
  std::optional<int> resolution;
  std::optional<double> margin, u_max;
};
int cmd_sample(const LoadedSurface& s, const SampleOptions& opt, std::ostream& out);

struct GraphOptions {
  double x_min = -2, x_max = 2, y_min = -2, y_max = 2;
  int resolution = 41;
  double h = 1e-3;  // stencil step of the residual and gradient
};
// CSV x,y,lambda,causal,zmc_residual in the entry's normalized coordinates
int cmd_graph(const LoadedSurface& s, const GraphOptions& opt, std::ostream& out);

struct CheckOptions {
  unsigned seed = 1;
  int random_surfaces = 5;
};
// invariant suite; one PASS/FAIL line per check
int cmd_check(const std::vector<LoadedSurface>& surfaces, const CheckOptions& opt, std::ostream& out);

int cmd_reduce(const std::vector<double>& coeffs, int m, ReciprocalParity parity, std::ostream& out);

// Full argument handling; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int exit_code_for(ErrorKind k);

}  // namespace zmc::cli

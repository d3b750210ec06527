#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpdc/materials.hpp"

namespace lpdc::cli {

struct Globals {
  std::string materials;  // extra materials file, merged over the builtin set
  std::optional<std::size_t> grid;
  std::optional<double> span;  // grid half-width, rad/fs

  MaterialDb database() const;
};

struct IndexArgs {
  std::string material;
  std::vector<double> wavelengths_nm;
  std::optional<double> angle_deg;
};

struct DesignArgs {
  std::string crystal = "BBO";
  double crystal_mm = 0.25;
  std::string spacer = "quartz";
  std::string target = "tau-minus";
  double orientation_deg = 0.0;
  int crystals = 2;
  double pump_nm = 400.0;
  double fwhm_nm = 1.95;
  bool axis_flip = false;
  std::string out;
};

struct ScanArgs {
  DesignArgs design;
  std::vector<std::string> candidates;
};

struct StackArgs {
  std::string stack;
  std::string out;
};

struct JsaArgs {
  StackArgs io;
  std::string mode = "full";
};

struct SchmidtArgs {
  std::string stack;
  std::string jsa;
  std::string out;
};

struct HomArgs {
  StackArgs io;
  std::optional<double> min_fs;
  std::optional<double> max_fs;
  std::size_t points = 801;
  double beta = 1.0;
};

struct ToleranceArgs {
  std::string preset;
  DesignArgs design;
  bool free_phase = false;
  std::string out;
};

struct WalkoffArgs {
  StackArgs io;
  std::optional<double> birth_um;
};

struct FigureArgs {
  std::string preset;
  std::string outdir;
};

int cmd_index(const Globals& g, const IndexArgs& a);
int cmd_gvm(const Globals& g, const IndexArgs& a);
int cmd_phasematch(const Globals& g, const IndexArgs& a);
int cmd_design(const Globals& g, const DesignArgs& a);
int cmd_scan(const Globals& g, const ScanArgs& a);
int cmd_jsa(const Globals& g, const JsaArgs& a);
int cmd_schmidt(const Globals& g, const SchmidtArgs& a);
int cmd_hom(const Globals& g, const HomArgs& a);
int cmd_tolerance(const Globals& g, const ToleranceArgs& a);
int cmd_walkoff(const Globals& g, const WalkoffArgs& a);
int cmd_figure(const Globals& g, const FigureArgs& a);

}  // namespace lpdc::cli

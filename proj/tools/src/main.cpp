// Command-line front end: phantom generation, CT segmentation, registration,
// intersection testing, resampling/overlay rendering, and metric evaluation.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slicereg/config.hpp"
#include "slicereg/errors.hpp"
#include "slicereg/intersection.hpp"
#include "slicereg/io_csv.hpp"
#include "slicereg/io_image.hpp"
#include "slicereg/io_json.hpp"
#include "slicereg/io_volume.hpp"
#include "slicereg/metrics.hpp"
#include "slicereg/overlay.hpp"
#include "slicereg/phantom.hpp"
#include "slicereg/profiles.hpp"
#include "slicereg/registration.hpp"
#include "slicereg/segmentation.hpp"

namespace fs = std::filesystem;
using namespace slicereg;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitDivergence = 4;

// Photo mask files are named <prefix>_<index>.<ext>; the trailing number in
// the stem is the photograph slice index.
std::optional<int> slice_index_from_stem(const std::string& stem) {
  int end = static_cast<int>(stem.size());
  while (end > 0 && std::isdigit(static_cast<unsigned char>(stem[end - 1]))) --end;
  if (end == static_cast<int>(stem.size())) return std::nullopt;
  return std::stoi(stem.substr(static_cast<std::size_t>(end)));
}

MaskStack load_mask_stack(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError("not a directory: " + dir.string());
  std::vector<std::pair<int, fs::path>> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string ext = e.path().extension().string();
    if (ext != ".png" && ext != ".pgm") continue;
    const auto idx = slice_index_from_stem(e.path().stem().string());
    if (!idx) throw DataError("mask filename carries no slice index: " + e.path().string());
    files.emplace_back(*idx, e.path());
  }
  if (files.empty()) throw DataError("no .png/.pgm mask files in " + dir.string());
  std::sort(files.begin(), files.end());
  MaskStack stack;
  for (const auto& [idx, path] : files) {
    stack.masks.push_back(read_mask(path));
    stack.slice_indices.push_back(idx);
  }
  stack.validate();
  return stack;
}

MaskStack subset_stack(const MaskStack& stack, int k, int center_index) {
  if (k < 1 || k > static_cast<int>(stack.count()))
    throw DataError("subset size out of range: " + std::to_string(k));
  // Ordinal of the named center slice.
  int c = -1;
  for (std::size_t i = 0; i < stack.slice_indices.size(); ++i)
    if (stack.slice_indices[i] == center_index) c = static_cast<int>(i);
  if (c < 0) throw DataError("center slice index not in stack: " + std::to_string(center_index));
  // Grow the window around the center, preferring symmetry.
  int lo = c, hi = c;
  while (hi - lo + 1 < k) {
    const bool can_lo = lo > 0;
    const bool can_hi = hi + 1 < static_cast<int>(stack.count());
    if (can_lo && (!can_hi || c - lo <= hi - c)) --lo;
    else ++hi;
  }
  MaskStack out;
  for (int i = lo; i <= hi; ++i) {
    out.masks.push_back(stack.masks[static_cast<std::size_t>(i)]);
    out.slice_indices.push_back(stack.slice_indices[static_cast<std::size_t>(i)]);
  }
  return out;
}

ThetaDocument make_doc(const TransformParams& params, const MaskStack& stack) {
  ThetaDocument doc;
  doc.params = params;
  doc.slice_indices = stack.slice_indices;
  doc.photo_width = stack.width();
  doc.photo_height = stack.height();
  return doc;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<int> stride;
};

void apply_globals(OptimConfig& cfg, const GlobalFlags& g) {
  if (g.threads) cfg.threads = *g.threads;
  if (g.stride) cfg.stride = *g.stride;
}

TransformParams run_profile_init(const MaskStack& stack, const BinaryVolume& ct_mask,
                                 const Config& cfg) {
  const auto init = initialize_params(stack, ct_mask, init_config_from(cfg));
  print_warnings(init.warnings);
  return init.params;
}

void report_trace(const OptimTrace& trace, const std::string& label) {
  std::cerr << label << ": " << trace.iterations << " iterations, final cost "
            << (trace.cost.empty() ? 0.0 : trace.cost.back()) << ", ";
  switch (trace.reason) {
    case StopReason::converged: std::cerr << "converged\n"; break;
    case StopReason::max_iterations: std::cerr << "stopped at max_iterations\n"; break;
    case StopReason::diverged: std::cerr << "diverged\n"; break;
  }
  if (trace.reason == StopReason::diverged)
    throw DivergenceError(label + ": parameter " + trace.diverged_param + " became non-finite",
                          trace.diverged_iteration);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slice-stack to CT volume registration toolkit"};
  app.require_subcommand(1);

  GlobalFlags globals;
  app.add_option("--seed", globals.seed, "Random seed override");
  app.add_option("--threads", globals.threads, "Worker thread count");
  app.add_option("--stride", globals.stride, "Pixel subsampling stride for the cost");

  // phantom
  auto* cmd_phantom = app.add_subcommand("phantom", "Generate a synthetic ground-truth phantom");
  std::string phantom_spec_path, phantom_out;
  cmd_phantom->add_option("--spec", phantom_spec_path, "Config file with a [phantom] section")
      ->required();
  cmd_phantom->add_option("--out", phantom_out, "Output directory")->required();

  // segment-ct
  auto* cmd_segct = app.add_subcommand("segment-ct", "Segment CT volumes with the averaged Otsu threshold");
  std::vector<std::string> segct_in, segct_out;
  int segct_radius = 1;
  cmd_segct->add_option("--in", segct_in, "Input volume headers (.mhd)")->required();
  cmd_segct->add_option("--out", segct_out, "Output mask headers (.mhd), one per input")->required();
  cmd_segct->add_option("--close-radius", segct_radius, "Morphological closing radius");

  // register
  auto* cmd_register = app.add_subcommand("register", "Profile initialization plus joint registration");
  std::string reg_ct, reg_photos, reg_config, reg_out, reg_trace;
  int reg_subset = 0, reg_center = std::numeric_limits<int>::min();
  cmd_register->add_option("--ct", reg_ct, "CT segmentation mask (.mhd)")->required();
  cmd_register->add_option("--photos", reg_photos, "Directory of photo mask images")->required();
  cmd_register->add_option("--config", reg_config, "Config file ([init]/[joint] sections)");
  cmd_register->add_option("--out", reg_out, "Output transform JSON")->required();
  cmd_register->add_option("--subset", reg_subset, "Keep only this many slices around the center slice");
  cmd_register->add_option("--center", reg_center, "Photograph index of the subset center slice");
  cmd_register->add_option("--trace", reg_trace, "Optional cost-trace CSV");

  // register-separate
  auto* cmd_separate = app.add_subcommand("register-separate", "Per-slice registration with frozen spacing");
  std::string sep_ct, sep_photos, sep_config, sep_out, sep_init = "profile", sep_joint_theta;
  cmd_separate->add_option("--ct", sep_ct, "CT segmentation mask (.mhd)")->required();
  cmd_separate->add_option("--photos", sep_photos, "Directory of photo mask images")->required();
  cmd_separate->add_option("--config", sep_config, "Config file ([init]/[joint]/[separate] sections)");
  cmd_separate->add_option("--init", sep_init, "Initialization: profile | joint")
      ->check(CLI::IsMember({"profile", "joint"}));
  cmd_separate->add_option("--joint-theta", sep_joint_theta,
                           "Reuse a saved joint transform instead of re-running it");
  cmd_separate->add_option("--out", sep_out, "Output per-slice transform list JSON")->required();

  // intersect
  auto* cmd_intersect = app.add_subcommand("intersect", "Slice-intersection test on per-slice transforms");
  std::string int_thetas, int_photos, int_out;
  int int_step = 8;
  cmd_intersect->add_option("--theta-per-slice", int_thetas, "Per-slice transform list JSON")->required();
  cmd_intersect->add_option("--photos", int_photos, "Directory of photo mask images")->required();
  cmd_intersect->add_option("--out", int_out, "Output report CSV")->required();
  cmd_intersect->add_option("--interior-step", int_step, "Interior sampling grid step");

  // resample
  auto* cmd_resample = app.add_subcommand("resample", "Render the registered CT slice for one photograph");
  std::string res_ct, res_theta, res_out;
  int res_slice = 0;
  cmd_resample->add_option("--ct", res_ct, "CT reconstruction volume (.mhd)")->required();
  cmd_resample->add_option("--theta", res_theta, "Transform JSON")->required();
  cmd_resample->add_option("--slice", res_slice, "Photograph slice index")->required();
  cmd_resample->add_option("--out", res_out, "Output PNG")->required();

  // overlay
  auto* cmd_overlay = app.add_subcommand("overlay", "Combined photo/CT-slice view");
  std::string ov_photo, ov_ct, ov_out;
  cmd_overlay->add_option("--photo", ov_photo, "Photo image (PNG/PGM)")->required();
  cmd_overlay->add_option("--ctslice", ov_ct, "Registered CT slice image (PNG/PGM)")->required();
  cmd_overlay->add_option("--out", ov_out, "Output PNG")->required();

  // ipced
  auto* cmd_ipced = app.add_subcommand("ipced", "In-plane core endpoint distance from annotations");
  std::string ip_ann;
  double ip_pixel_size = 0.0;
  cmd_ipced->add_option("--annotations", ip_ann, "Annotation CSV")->required();
  cmd_ipced->add_option("--pixel-size", ip_pixel_size, "mm per rendered pixel")->required();

  // seg-metrics
  auto* cmd_segm = app.add_subcommand("seg-metrics", "Segmentation quality metrics");
  std::vector<std::string> sm_pred, sm_truth;
  double sm_pixel_size = 1.0;
  cmd_segm->add_option("--pred", sm_pred, "Predicted mask images")->required();
  cmd_segm->add_option("--truth", sm_truth, "Ground-truth mask images, one per prediction")->required();
  cmd_segm->add_option("--pixel-size", sm_pixel_size, "mm per pixel for the edge distance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cmd_phantom) {
      auto cfg = Config::parse_file(phantom_spec_path);
      PhantomSpec spec = phantom_spec_from(cfg);
      if (globals.seed) spec.seed = *globals.seed;
      const Phantom ph = generate_phantom(spec);
      const fs::path out(phantom_out);
      fs::create_directories(out);
      write_volume(out / "volume.mhd", ph.volume);
      write_volume(out / "occupancy.mhd", ph.occupancy);
      fs::create_directories(out / "masks");
      for (std::size_t k = 0; k < ph.stack.count(); ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "slice_%03d.png", ph.stack.slice_indices[k]);
        write_mask_png(out / "masks" / name, ph.stack.masks[k]);
      }
      write_landmarks(out / "landmarks.csv", ph.landmarks);
      write_theta(out / "theta_true.json", make_doc(ph.truth, ph.stack));
      std::cout << "phantom written to " << out.string() << "\n";
    } else if (*cmd_segct) {
      if (segct_in.size() != segct_out.size())
        throw DataError("segment-ct: --in and --out counts differ");
      std::vector<ScalarVolume> volumes;
      for (const auto& p : segct_in) volumes.push_back(read_scalar_volume(p));
      const double t = average_otsu(volumes);
      std::cout << "average Otsu threshold: " << t << "\n";
      for (std::size_t i = 0; i < volumes.size(); ++i)
        write_volume(segct_out[i], segment_ct(volumes[i], t, segct_radius));
    } else if (*cmd_register) {
      const BinaryVolume ct_mask = read_binary_volume(reg_ct);
      MaskStack stack = load_mask_stack(reg_photos);
      if (reg_subset > 0) {
        const int center = (reg_center == std::numeric_limits<int>::min())
                               ? stack.slice_indices[stack.count() / 2]
                               : reg_center;
        stack = subset_stack(stack, reg_subset, center);
      }
      Config cfg = reg_config.empty() ? Config() : Config::parse_file(reg_config);
      OptimConfig jcfg = optim_config_from(cfg, "joint");
      apply_globals(jcfg, globals);
      const TransformParams init = run_profile_init(stack, ct_mask, cfg);
      const OptimTrace trace = optimize_joint(stack, ct_mask, init, jcfg);
      report_trace(trace, "joint registration");
      if (!reg_trace.empty()) write_trace_csv(reg_trace, trace);
      write_theta(reg_out, make_doc(trace.final_params, stack));
      std::cout << "transform written to " << reg_out << "\n";
    } else if (*cmd_separate) {
      const BinaryVolume ct_mask = read_binary_volume(sep_ct);
      const MaskStack stack = load_mask_stack(sep_photos);
      Config cfg = sep_config.empty() ? Config() : Config::parse_file(sep_config);
      OptimConfig scfg = optim_config_from(cfg, "separate");
      apply_globals(scfg, globals);
      TransformParams init;
      if (sep_init == "profile") {
        init = run_profile_init(stack, ct_mask, cfg);
      } else if (!sep_joint_theta.empty()) {
        init = read_theta(sep_joint_theta).params;
        if (init.slice_count() != stack.count())
          throw DataError("--joint-theta slice count does not match the photo stack");
      } else {
        OptimConfig jcfg = optim_config_from(cfg, "joint");
        apply_globals(jcfg, globals);
        const OptimTrace jt =
            optimize_joint(stack, ct_mask, run_profile_init(stack, ct_mask, cfg), jcfg);
        report_trace(jt, "joint registration (initializer)");
        init = jt.final_params;
      }
      const auto traces = optimize_separate(stack, ct_mask, init, scfg);
      std::vector<ThetaDocument> docs;
      for (std::size_t k = 0; k < traces.size(); ++k) {
        report_trace(traces[k], "slice " + std::to_string(stack.slice_indices[k]));
        ThetaDocument d;
        d.params = traces[k].final_params;
        d.slice_indices = {stack.slice_indices[k]};
        d.photo_width = stack.width();
        d.photo_height = stack.height();
        docs.push_back(d);
      }
      write_theta_list(sep_out, docs);
      std::cout << "per-slice transforms written to " << sep_out << "\n";
    } else if (*cmd_intersect) {
      const MaskStack stack = load_mask_stack(int_photos);
      const auto docs = read_theta_list(int_thetas);
      if (docs.size() != stack.count())
        throw DataError("intersect: transform count does not match the photo stack");
      std::vector<TransformParams> per_slice;
      for (const auto& d : docs) per_slice.push_back(d.params);
      const IntersectionReport report = intersection_test(stack, per_slice, int_step);
      print_warnings(report.warnings);
      write_intersection_csv(int_out, report, stack.slice_indices);
      std::cout << "classification: " << to_string(report.classification) << "\n";
    } else if (*cmd_resample) {
      const ScalarVolume vol = read_scalar_volume(res_ct);
      const ThetaDocument doc = read_theta(res_theta);
      write_png(res_out, resample_slice(vol, doc, res_slice));
      std::cout << "slice written to " << res_out << "\n";
    } else if (*cmd_overlay) {
      const Image8 photo = read_image(ov_photo);
      const Image8 ct = read_image(ov_ct);
      write_png(ov_out, render_overlay(photo, ct));
      std::cout << "overlay written to " << ov_out << "\n";
    } else if (*cmd_ipced) {
      if (!(ip_pixel_size > 0)) throw DataError("ipced: --pixel-size must be > 0");
      const AnnotationSet ann = read_annotations(ip_ann, ip_pixel_size);
      std::cout << "IPCED: " << ipced(ann) << " mm\n";
    } else if (*cmd_segm) {
      if (sm_pred.size() != sm_truth.size())
        throw DataError("seg-metrics: --pred and --truth counts differ");
      std::vector<SegMetricsReport> reports;
      for (std::size_t i = 0; i < sm_pred.size(); ++i) {
        const Mask2 pred = read_mask(sm_pred[i]);
        const Mask2 truth = read_mask(sm_truth[i]);
        const SegMetricsReport r = seg_metrics(pred, truth, sm_pixel_size);
        print_warnings(r.warnings);
        std::cout << sm_pred[i] << ": accuracy " << r.accuracy << "% precision " << r.precision
                  << "% recall " << r.recall << "% edge " << r.edge_distance_mean << " +/- "
                  << r.edge_distance_std << " mm\n";
        reports.push_back(r);
      }
      const AggregateMetrics agg = aggregate_metrics(reports);
      std::cout << "aggregate: accuracy " << agg.accuracy_mean << " +/- " << agg.accuracy_std
                << "% precision " << agg.precision_mean << " +/- " << agg.precision_std
                << "% recall " << agg.recall_mean << " +/- " << agg.recall_std << "% edge "
                << agg.edge_distance_mean << " +/- " << agg.edge_distance_std << " mm\n";
    }
  } catch (const DivergenceError& e) {
    std::cerr << "divergence at iteration " << e.iteration << ": " << e.what() << "\n";
    return kExitDivergence;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lesionfuse/error.hpp"
#include "lesionfuse/image_io.hpp"
#include "lesionfuse/metrics.hpp"
#include "lesionfuse/pipeline.hpp"

namespace fs = std::filesystem;
using namespace lesionfuse;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitDegenerate = 4;

constexpr Rgb kBorderRed{255, 0, 0};

struct CliOptions {
    std::string input;
    std::string output;
    std::string overlay;
    std::string channel = "blue";
    std::vector<std::string> ensemble;
    PipelineOptions pipeline;
    bool show_time = false;

    std::string mask_path;
    std::string truth_points;
    std::string truth_mask;
    std::string manifest;
};

Channel parse_channel(const std::string& name) {
    if (name == "red")
        return Channel::Red;
    if (name == "green")
        return Channel::Green;
    return Channel::Blue;
}

void finish_pipeline_options(CliOptions& opts) {
    opts.pipeline.channel = parse_channel(opts.channel);
    if (!opts.ensemble.empty()) {
        opts.pipeline.methods.clear();
        for (const std::string& name : opts.ensemble) {
            auto m = method_from_name(name);
            if (!m)
                throw CLI::ValidationError("--ensemble", "unknown method '" + name + "'");
            opts.pipeline.methods.push_back(*m);
        }
    }
}

void add_pipeline_flags(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--channel", opts.channel, "Channel fed to the thresholders")
        ->check(CLI::IsMember({"blue", "green", "red"}))
        ->capture_default_str();
    cmd->add_option("--ensemble", opts.ensemble,
                    "Comma-separated thresholding methods "
                    "(huang_wang, kapur, kittler, otsu; default: all four)")
        ->delimiter(',');
    cmd->add_option("--gamma", opts.pipeline.fusion.gamma, "Fusion weight decay rate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--beta-sp", opts.pipeline.fusion.beta_sp,
                    "Spatial energy weight (takes effect when --iterations > 0)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--iterations", opts.pipeline.fusion.iterations,
                    "Spatial update sweeps after initialization")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--convergence", opts.pipeline.fusion.convergence_fraction,
                    "Stop sweeps once the changed-label fraction falls below this")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)))
        ->capture_default_str();
    cmd->add_option("--expand-k", opts.pipeline.expand_k,
                    "Scale factor of the border expansion radius R = floor(k*D/512)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_flag_callback(
        "--no-expand", [&opts] { opts.pipeline.expand = false; },
        "Skip the final dilation (R = 0)");
    cmd->add_flag_callback(
        "--light-object", [&opts] { opts.pipeline.dark_object = false; },
        "Treat pixels above the threshold as the object (default: below)");
}

BinaryMask load_truth(const std::string& path, int width, int height) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".txt")
        return rasterize_border(read_border_points(path), width, height);
    return read_mask(path);
}

int cmd_segment(CliOptions& opts) {
    finish_pipeline_options(opts);
    ColorImage img = read_image(opts.input);
    PipelineResult result = detect_border(img, opts.pipeline);
    write_mask(opts.output, result.mask);
    if (!opts.overlay.empty())
        write_overlay(opts.overlay, img, {{result.mask, kBorderRed}});
    if (opts.show_time)
        std::printf("%.2f ms\n", result.elapsed_ms);
    return 0;
}

int cmd_evaluate(CliOptions& opts) {
    BinaryMask automatic = read_mask(opts.mask_path);
    BinaryMask manual = opts.truth_points.empty()
                            ? read_mask(opts.truth_mask)
                            : rasterize_border(read_border_points(opts.truth_points),
                                               automatic.width, automatic.height);
    double epsilon = xor_error(automatic, manual);
    std::printf("%.2f\n", epsilon * 100.0);
    return 0;
}

int cmd_batch(CliOptions& opts) {
    finish_pipeline_options(opts);
    std::vector<ManifestRow> manifest = read_manifest(opts.manifest);
    const fs::path base = fs::path(opts.manifest).parent_path();
    auto resolve = [&base](const std::string& p) {
        fs::path path(p);
        return path.is_absolute() ? path.string() : (base / path).string();
    };

    std::vector<EvalRow> rows;
    bool any_failed = false;
    for (const ManifestRow& item : manifest) {
        EvalRow row;
        row.image = item.image_path;
        row.cls = item.cls;
        try {
            ColorImage img = read_image(resolve(item.image_path));
            PipelineResult result = detect_border(img, opts.pipeline);
            BinaryMask truth = load_truth(resolve(item.truth_path), img.width, img.height);
            row.epsilon = xor_error(result.mask, truth);
        } catch (const std::exception& e) {
            row.error = e.what();
            any_failed = true;
        }
        rows.push_back(std::move(row));
    }

    EvalReport report = aggregate(rows);
    std::ofstream out(opts.output, std::ios::binary);
    if (!out)
        throw IoError(opts.output + ": cannot open for writing");
    write_report(out, report);
    if (!out)
        throw IoError(opts.output + ": write failed");
    return any_failed ? kExitData : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lesion border detection by MRF fusion of a thresholding ensemble"};
    app.require_subcommand(1);
    CliOptions opts;

    CLI::App* segment = app.add_subcommand("segment", "Detect the lesion border in one image");
    segment->add_option("-i,--input", opts.input, "Input image (PNG, PPM or PGM)")->required();
    segment->add_option("-o,--output", opts.output, "Output mask (PGM, or PNG by extension)")
        ->required();
    segment->add_option("--overlay", opts.overlay, "Also write an RGB PNG with the border drawn");
    add_pipeline_flags(segment, opts);
    segment->add_flag("--time", opts.show_time, "Print pipeline wall-clock milliseconds");

    CLI::App* evaluate = app.add_subcommand("evaluate", "XOR error of a mask against ground truth");
    evaluate->add_option("--mask", opts.mask_path, "Automatic border mask")->required();
    auto* tp = evaluate->add_option("--truth", opts.truth_points,
                                    "Manual border control points (text file, one \"x y\" per line)");
    auto* tm = evaluate->add_option("--truth-mask", opts.truth_mask, "Manual border as a mask image");
    tp->excludes(tm);
    tm->excludes(tp);

    CLI::App* batch = app.add_subcommand("batch", "Segment and evaluate a whole manifest");
    batch->add_option("--manifest", opts.manifest,
                      "CSV manifest: image_path,truth_path,class (benign|melanoma)")
        ->required();
    batch->add_option("-o,--output", opts.output, "Report CSV path")->required();
    add_pipeline_flags(batch, opts);

    try {
        app.parse(argc, argv);
        if (evaluate->parsed() && opts.truth_points.empty() && opts.truth_mask.empty())
            throw CLI::RequiredError("--truth or --truth-mask");
        if (segment->parsed())
            return cmd_segment(opts);
        if (evaluate->parsed())
            return cmd_evaluate(opts);
        return cmd_batch(opts);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const DegenerateHistogram& e) {
        std::cerr << "error: degenerate histogram: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}

#include "commands.hpp"

#include "imgq/assembly.hpp"
#include "imgq/codec.hpp"
#include "imgq/error.hpp"
#include "imgq/experiment.hpp"
#include "imgq/imgcore.hpp"
#include "imgq/pyramid.hpp"
#include "imgq/texture_dof.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

namespace imgq::cli {

namespace {

QualityConfig quality_config(const std::optional<double>& theta) {
    QualityConfig cfg;
    cfg.blur.theta = theta;
    return cfg;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
    case ErrorCode::InvalidArgument:
        return kExitUsage;
    default:
        return kExitFailure;
    }
}

void write_scaled(const std::filesystem::path& path, const Plane& p, double lo, double hi) {
    write_file(path, encode_png(p, lo, hi));
}

Plane abs_plane(const Plane& p) {
    Plane out = p;
    for (double& v : out.data)
        v = std::abs(v);
    return out;
}

} // namespace

int cmd_extract(const ExtractOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<ListingRecord> records;
    try {
        records = read_manifest(opt.manifest);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }

    const auto result = extract_all(opt.manifest, records, quality_config(opt.theta), opt.threads);
    for (const auto& msg : result.errors)
        err << "warning: skipped " << msg << '\n';

    std::vector<FeatureRecord> features;
    features.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
        if (result.vectors[i])
            features.emplace_back(records[i].listing_id, *result.vectors[i]);

    try {
        if (opt.out.extension() == ".csv")
            write_vectors_csv(opt.out, features);
        else
            write_vectors(opt.out, features);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    out << "extracted " << features.size() << " of " << records.size() << " records\n";
    if (result.errors.size() * 10 > records.size()) {
        err << "error: " << result.errors.size() << " of " << records.size() << " images failed\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_visualize(const VisualizeOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const RasterImage img = read_image(opt.image);
        const QualityConfig cfg = quality_config(opt.theta);
        const QualityVector q = extract_quality(img, cfg);
        std::filesystem::create_directories(opt.out_dir);
        const auto& dir = opt.out_dir;

        const Plane lap = laplacian_3x3(img);
        write_scaled(dir / "laplacian.png", lap, 0.0, std::max(lap.max(), 1e-12));

        const SaliencyMap sal = spectral_residual_saliency(img, cfg.saliency);
        write_scaled(dir / "saliency.png", sal.values, 0.0, 1.0);

        const ThirdsMap thirds = thirds_map(sal);
        constexpr int kCell = 40;
        Plane grid(5 * kCell, 5 * kCell);
        for (int y = 0; y < grid.height; ++y)
            for (int x = 0; x < grid.width; ++x)
                grid(x, y) = thirds[static_cast<std::size_t>((y / kCell) * 5 + x / kCell)];
        write_scaled(dir / "thirds_map.png", grid, 0.0, std::max(grid.max(), 1e-12));

        const Plane gray = to_gray_plane(img);
        const auto codes = lbp_codes(gray);
        Plane lbp(gray.width - 2, gray.height - 2);
        std::transform(codes.begin(), codes.end(), lbp.data.begin(),
                       [](unsigned char c) { return static_cast<double>(c); });
        write_scaled(dir / "lbp.png", lbp, 0.0, 255.0);

        const Pyramid wav = build_wavelet_pyramid(lightness_plane(img), 1);
        const char* names[] = {"wavelet_hl.png", "wavelet_lh.png", "wavelet_hh.png"};
        for (int b = 0; b < 3; ++b) {
            const Plane mag = abs_plane(wav.band(0, b));
            write_scaled(dir / names[b], mag, 0.0, std::max(mag.max(), 1e-12));
        }

        nlohmann::ordered_json j;
        for (const auto& e : schema()) {
            if (e.length == 1)
                j[std::string(e.name)] = q.values[e.offset];
            else if (e.length < static_cast<std::size_t>(kLbpDim))
                j[std::string(e.name)] = std::vector<double>(
                    q.values.begin() + static_cast<std::ptrdiff_t>(e.offset),
                    q.values.begin() + static_cast<std::ptrdiff_t>(e.offset + e.length));
        }
        std::ofstream js(dir / "features.json", std::ios::binary | std::ios::trunc);
        js << j.dump(2) << '\n';
        if (!js)
            throw Error(ErrorCode::IoError, "cannot write features.json");
        out << "wrote visualizations to " << dir.string() << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

int cmd_train_eval(const TrainEvalOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        ExperimentConfig cfg;
        cfg.quality = quality_config(opt.theta);
        cfg.train.l2 = opt.l2;
        cfg.train.lr = opt.lr;
        cfg.train.epochs = opt.epochs;
        cfg.binarize = opt.binarize;
        cfg.test_fraction = opt.test_fraction;
        cfg.seed = opt.seed;
        cfg.threads = opt.threads;
        cfg.model_dir = opt.model_dir;
        std::vector<FeatureRecord> features;
        if (opt.features) {
            features = read_vectors(*opt.features);
            cfg.features = &features;
        }
        const EvalReport report = run_experiment(opt.manifest, cfg);
        out << to_json(report) << '\n';
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

int cmd_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.n < 20) {
        err << "error: synth needs n >= 20\n";
        return kExitUsage;
    }
    try {
        generate_synthetic(opt.n, opt.seed, opt.out_dir);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    out << "wrote " << opt.n << " listings to " << opt.out_dir.string() << '\n';
    return kExitOk;
}

} // namespace imgq::cli

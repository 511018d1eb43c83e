#include "commands.hpp"

#include "CLI11.hpp"

#include <ostream>

namespace imgq::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Image quality features and popularity models for listing photos", "imgq"};
    app.require_subcommand(1);

    ExtractOptions ex;
    auto* extract = app.add_subcommand("extract", "Extract quality vectors for a manifest");
    extract->add_option("--manifest", ex.manifest, "JSONL manifest")->required();
    extract->add_option("--out", ex.out, "Feature file (.csv for text)")->required();
    extract->add_option("--threads", ex.threads, "Worker threads")
        ->envname("IMGQ_THREADS")
        ->check(CLI::Range(1u, 1024u));
    extract->add_option("--theta", ex.theta, "Absolute spectral threshold for blur")
        ->check(CLI::PositiveNumber);

    VisualizeOptions vz;
    auto* visualize = app.add_subcommand("visualize", "Write intermediate feature maps of one image");
    visualize->add_option("image", vz.image, "Input PNG or JPEG")->required();
    visualize->add_option("--out", vz.out_dir, "Output directory")->required();
    visualize->add_option("--theta", vz.theta, "Absolute spectral threshold for blur")
        ->check(CLI::PositiveNumber);

    TrainEvalOptions te;
    std::string policy = "median";
    std::string features, model_dir;
    auto* train_eval = app.add_subcommand("train-eval", "Train text, image and multimodal models");
    train_eval->add_option("--manifest", te.manifest, "JSONL manifest")->required();
    train_eval->add_option("--features", features, "Precomputed feature file from extract");
    train_eval->add_option("--out", model_dir, "Directory for model files");
    train_eval->add_option("--threads", te.threads, "Worker threads")
        ->envname("IMGQ_THREADS")
        ->check(CLI::Range(1u, 1024u));
    train_eval->add_option("--seed", te.seed, "Split and training seed")->envname("IMGQ_SEED");
    train_eval->add_option("--theta", te.theta, "Absolute spectral threshold for blur")
        ->check(CLI::PositiveNumber);
    train_eval->add_option("--binarize", policy, "Label policy")
        ->check(CLI::IsMember({"median", "positive"}));
    train_eval->add_option("--l2", te.l2, "L2 strength")->check(CLI::NonNegativeNumber);
    train_eval->add_option("--lr", te.lr, "Learning rate")->check(CLI::PositiveNumber);
    train_eval->add_option("--epochs", te.epochs, "Training epochs")->check(CLI::Range(1, 100000));
    train_eval->add_option("--test-fraction", te.test_fraction, "Held-out share")
        ->check(CLI::Range(0.01, 0.99));

    SynthOptions sy;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic listing corpus");
    synth->add_option("-n,--count", sy.n, "Number of listings")->required();
    synth->add_option("--seed", sy.seed, "Generator seed")->envname("IMGQ_SEED");
    synth->add_option("--out", sy.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (*extract)
        return cmd_extract(ex, out, err);
    if (*visualize)
        return cmd_visualize(vz, out, err);
    if (*train_eval) {
        te.binarize = parse_binarize_policy(policy);
        if (!features.empty())
            te.features = features;
        if (!model_dir.empty())
            te.model_dir = model_dir;
        return cmd_train_eval(te, out, err);
    }
    return cmd_synth(sy, out, err);
}

} // namespace imgq::cli

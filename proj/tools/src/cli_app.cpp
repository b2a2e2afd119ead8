#include "chromaname_cli/cli_app.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "chromaname/clustering.hpp"
#include "chromaname/corpus.hpp"
#include "chromaname/imaging.hpp"
#include "chromaname/io_util.hpp"
#include "chromaname/palette.hpp"
#include "chromaname/query.hpp"

namespace chromaname::cli {

namespace fs = std::filesystem;

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::MalformedHex:
        case ErrorCode::EmptyAfterNormalization:
            return kExitUsage;
        case ErrorCode::MalformedRow:
        case ErrorCode::EmptyCorpus:
        case ErrorCode::TooFewDistinctPoints:
        case ErrorCode::SchemaViolation:
        case ErrorCode::PaletteMismatch:
        case ErrorCode::UndecodableImage:
        case ErrorCode::EmptyImage:
            return kExitDataDefect;
        case ErrorCode::FileUnreadable:
        case ErrorCode::FileUnwritable:
            return kExitIo;
        default:
            return kExitFailure;
    }
}

namespace {

struct GlobalOptions {
    std::uint64_t seed = 42;
    std::string corpus;
    std::string palette;
    std::string out;
    bool strict = false;
    std::size_t threads = 0;
};

struct ClusterOptions {
    std::size_t k_min = 50;
    std::size_t k_max = 990;
    std::size_t k_step = 10;
    std::size_t restarts = kSweepRestarts;
    std::size_t final_restarts = kFinalRestarts;
    std::optional<std::size_t> k;
};

struct TagOptions {
    std::size_t colors = kDefaultDominantColors;
    std::size_t stride = 10;
    bool suppress_white = false;
};

// Logs one line per pipeline stage with its wall time.
class StageTimer {
public:
    StageTimer(std::ostream& err, std::string name)
        : err_(err), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
    ~StageTimer() {
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.1f", ms);
        err_ << "stage=" << name_ << " elapsed_ms=" << buf << '\n';
    }

private:
    std::ostream& err_;
    std::string name_;
    std::chrono::steady_clock::time_point start_;
};

// Collects the files of one run; if the run fails before commit(), the files
// written so far are removed so no partial artifact set is left behind.
class Artifacts {
public:
    ~Artifacts() {
        if (committed_) return;
        std::error_code ec;
        for (const auto& p : written_) fs::remove(p, ec);
    }
    void write(const fs::path& path, std::string_view bytes) {
        write_file_atomic(path, bytes);
        written_.push_back(path);
    }
    void commit() { committed_ = true; }

private:
    std::vector<fs::path> written_;
    bool committed_ = false;
};

void require(bool condition, std::string_view message) {
    if (!condition) throw Error(ErrorCode::InvalidArgument, std::string(message));
}

fs::path out_dir(const GlobalOptions& g) {
    const fs::path dir = g.out.empty() ? fs::path("chromaname-out") : fs::path(g.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::FileUnwritable, dir.string() + ": " + ec.message());
    return dir;
}

std::string format_double(double v, const char* fmt = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

void print_provenance(std::ostream& out, std::uint64_t seed, std::string_view corpus_digest,
                      std::string_view palette_digest = {}) {
    out << "seed=" << seed << " corpus_digest=" << corpus_digest;
    if (!palette_digest.empty()) out << " palette_digest=" << palette_digest;
    out << '\n';
}

void print_names(std::ostream& out, const std::vector<NameFrequency>& names) {
    for (const auto& n : names) out << "  " << format_double(n.probability, "%.4f") << ' ' << n.name.str() << '\n';
}

// "#rrggbb", "rrggbb" or "R,G,B".
RgbColor parse_color_argument(const std::string& text) {
    if (text.find(',') == std::string::npos) return parse_hex(text);
    std::istringstream in(text);
    int channels[3];
    char sep1 = 0, sep2 = 0;
    in >> channels[0] >> sep1 >> channels[1] >> sep2 >> channels[2];
    const bool ok = in && sep1 == ',' && sep2 == ',' && (in >> std::ws).eof();
    for (int c : channels) require(ok && c >= 0 && c <= 255, "color must be #rrggbb or R,G,B with 0..255 channels");
    return {static_cast<std::uint8_t>(channels[0]), static_cast<std::uint8_t>(channels[1]),
            static_cast<std::uint8_t>(channels[2])};
}

LoadResult load_input_corpus(const GlobalOptions& g, std::ostream& err) {
    require(!g.corpus.empty(), "--corpus is required");
    StageTimer t(err, "load_corpus");
    return load_corpus(g.corpus, g.strict);
}

Palette load_input_palette(const GlobalOptions& g, std::ostream& err) {
    require(!g.palette.empty(), "--palette is required");
    StageTimer t(err, "load_palette");
    return load_palette(g.palette);
}

void report_defects(const std::vector<RowDefect>& defects, std::ostream& err) {
    for (const auto& d : defects) {
        err << "defect line=" << d.line << " code=" << to_string(d.kind) << " message=" << d.message << '\n';
    }
}

void cmd_ingest(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
    const auto loaded = load_input_corpus(g, err);
    const auto stats = corpus_stats(loaded.corpus);
    print_provenance(out, g.seed, loaded.corpus.digest());
    out << "entries=" << stats.total << '\n';
    out << "sources=" << stats.source_counts.size() << '\n';
    for (const auto& [source, count] : stats.source_counts) out << "  " << source << ' ' << count << '\n';
    out << "distinct_names=" << stats.distinct_names << '\n';
    out << "duplicate_rgb=" << stats.duplicate_rgb << '\n';
    out << "defects=" << loaded.defects.size() << '\n';
    for (const auto& d : loaded.defects) {
        out << "  line " << d.line << ' ' << to_string(d.kind) << ": " << d.message << '\n';
    }
}

void cmd_cluster(const GlobalOptions& g, const ClusterOptions& c, std::ostream& out, std::ostream& err) {
    const auto loaded = load_input_corpus(g, err);
    report_defects(loaded.defects, err);
    const auto points = lab_matrix(loaded.corpus);
    const fs::path dir = out_dir(g);
    const RandomSeed seed{g.seed};
    print_provenance(out, g.seed, loaded.corpus.digest());

    Artifacts artifacts;
    std::size_t k = 0;
    if (c.k) {
        k = *c.k;
    } else {
        auto ks = k_range(c.k_min, c.k_max, c.k_step);
        const std::size_t distinct = count_distinct(points);
        if (ks.back() > distinct) {
            std::erase_if(ks, [&](std::size_t v) { return v > distinct; });
            err << "warning: k range capped at " << distinct << " distinct colors\n";
            require(!ks.empty(), "k range lies entirely above the number of distinct colors");
        }
        ElbowCurve curve;
        {
            StageTimer t(err, "elbow_sweep");
            curve = elbow_sweep(points, ks, seed, c.restarts, g.threads);
        }
        {
            StageTimer t(err, "knee");
            k = detect_knee(curve);
        }
        artifacts.write(dir / "elbow.csv", elbow_csv(curve));
        artifacts.write(dir / "elbow.svg", elbow_svg(curve, k));
        out << "k_candidates=" << ks.size() << " k_star=" << k << '\n';
    }

    ClusterModel model;
    {
        StageTimer t(err, "final_kmeans");
        model = kmeans(points, k, seed, {.restarts = c.final_restarts});
    }
    artifacts.write(dir / "model.json", model_to_json(model, loaded.corpus.digest()));
    artifacts.commit();
    out << "k=" << model.k << " objective=" << format_double(model.objective)
        << " mean_de00=" << format_double(mean_intra_de(points, model)) << " iterations=" << model.iterations
        << '\n';
    out << "model=" << (dir / "model.json").string() << '\n';
}

void cmd_palette(const GlobalOptions& g, const std::string& model_path, const std::string& order_name,
                 std::ostream& out, std::ostream& err) {
    const auto loaded = load_input_corpus(g, err);
    report_defects(loaded.defects, err);
    const fs::path dir = out_dir(g);
    const fs::path model_file = model_path.empty() ? dir / "model.json" : fs::path(model_path);

    std::string model_digest;
    const auto model = model_from_json(read_file(model_file), model_digest);
    if (model_digest != loaded.corpus.digest()) {
        throw Error(ErrorCode::PaletteMismatch, "model was built from corpus " + model_digest + ", not " +
                                                    loaded.corpus.digest());
    }
    if (model.assignments.size() != loaded.corpus.size()) {
        throw Error(ErrorCode::SchemaViolation, "model assignments do not cover the corpus");
    }

    Palette palette;
    {
        StageTimer t(err, "build_palette");
        palette = build_palette(loaded.corpus, model);
    }
    const fs::path palette_file = g.palette.empty() ? dir / "palette.json" : fs::path(g.palette);
    const auto order = order_name == "id" ? SwatchOrder::Id : SwatchOrder::Hue;

    Artifacts artifacts;
    {
        StageTimer t(err, "export");
        artifacts.write(palette_file, palette_to_json(palette));
        artifacts.write(dir / "swatches.svg", swatch_svg(palette, order));
        artifacts.write(dir / "rgb_cube.csv", rgb_cube_csv(palette));
    }
    artifacts.commit();
    print_provenance(out, palette.provenance.seed, palette.provenance.corpus_digest, palette_digest(palette));
    out << "entries=" << palette.entries.size() << '\n';
    out << "palette=" << palette_file.string() << '\n';
}

void cmd_name(const GlobalOptions& g, const std::string& color, std::ostream& out, std::ostream& err) {
    const RgbColor rgb = parse_color_argument(color);
    const auto palette = load_input_palette(g, err);
    print_provenance(out, palette.provenance.seed, palette.provenance.corpus_digest, palette_digest(palette));
    const auto naming = name_color(palette, rgb);
    out << format_hex(rgb) << " entry=" << naming.entry_id << " de00=" << format_double(naming.distance, "%.4f")
        << " centroid=" << format_hex(palette.entries[naming.entry_id].centroid_rgb) << '\n';
    print_names(out, naming.names);
}

void cmd_lookup(const GlobalOptions& g, const std::string& query, std::size_t max_distance, std::ostream& out,
                std::ostream& err) {
    const auto palette = load_input_palette(g, err);
    print_provenance(out, palette.provenance.seed, palette.provenance.corpus_digest, palette_digest(palette));
    const auto matches = lookup_by_name(palette, query, max_distance);
    out << "matches=" << matches.size() << '\n';
    for (const auto& m : matches) {
        const auto& e = palette.entries[m.entry_id];
        out << "  entry=" << m.entry_id << ' ' << format_hex(e.centroid_rgb) << ' ' << m.matched_name.str()
            << (m.kind == MatchKind::Exact ? " exact" : " fuzzy") << " edits=" << m.distance
            << " p=" << format_double(m.probability, "%.4f") << '\n';
    }
}

SamplingOptions sampling(const TagOptions& t) {
    return {.stride = t.stride, .suppress_white = t.suppress_white};
}

void print_tag(std::ostream& out, const ImageTag& tag) {
    out << tag.image << ' ' << format_hex(tag.dominant.rgb)
        << " population=" << format_double(tag.dominant.population, "%.4f") << " entry=" << tag.entry_id
        << " de00=" << format_double(tag.distance, "%.4f") << '\n';
    print_names(out, tag.names);
}

void cmd_tag(const GlobalOptions& g, const std::string& image, const TagOptions& t, std::ostream& out,
             std::ostream& err) {
    const auto palette = load_input_palette(g, err);
    print_provenance(out, palette.provenance.seed, palette.provenance.corpus_digest, palette_digest(palette));
    StageTimer timer(err, "tag");
    print_tag(out, tag_image(image, palette, t.colors, sampling(t)));
}

void cmd_index(const GlobalOptions& g, const std::string& dir, const TagOptions& t, std::ostream& out,
               std::ostream& err) {
    const auto palette = load_input_palette(g, err);
    print_provenance(out, palette.provenance.seed, palette.provenance.corpus_digest, palette_digest(palette));
    ColorIndex index;
    {
        StageTimer timer(err, "index");
        index = build_index(dir, palette, t.colors, sampling(t), g.threads);
    }
    for (const auto& s : index.skipped) err << "warning: skipped " << s << '\n';
    fs::path target = g.out;
    if (target.empty()) {
        fs::path d = fs::path(dir).lexically_normal();
        if (d.filename().empty()) d = d.parent_path();
        target = d.string() + ".index.json";
    }
    save_index(index, target);
    out << "images=" << index.tags.size() << " skipped=" << index.skipped.size() << '\n';
    out << "index=" << target.string() << '\n';
}

void cmd_search(const GlobalOptions& g, const std::string& index_path, const std::string& query,
                std::size_t max_distance, std::ostream& out, std::ostream& err) {
    const auto palette = load_input_palette(g, err);
    print_provenance(out, palette.provenance.seed, palette.provenance.corpus_digest, palette_digest(palette));
    const auto index = load_index(index_path);
    const auto hits = search_by_name(index, palette, query, max_distance);
    out << "hits=" << hits.size() << '\n';
    for (const auto& h : hits) {
        out << "  " << h.image << " entry=" << h.entry_id << ' ' << h.matched_name.str() << " edits=" << h.match_distance
            << " de00=" << format_double(h.distance, "%.4f") << '\n';
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Data-driven color naming: build a palette from named colors, then name colors and tag images.",
                 "chromaname"};
    app.require_subcommand(1, 1);

    // Global flags are accepted before or after the subcommand and appear in
    // every subcommand's help.
    GlobalOptions g;
    const auto add_global_options = [&g](CLI::App* a) {
        a->add_option("--seed", g.seed, "Random seed for clustering")->capture_default_str();
        a->add_option("--corpus", g.corpus, "Corpus CSV (name,hex,rgb,source)");
        a->add_option("--palette", g.palette, "Palette JSON (written by 'palette', read by the query commands)");
        a->add_option("--out", g.out, "Output directory for cluster/palette, output file for index");
        a->add_flag("--strict", g.strict, "Treat any malformed or duplicate corpus row as fatal");
        a->add_option("--threads", g.threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();
    };
    add_global_options(&app);

    auto* ingest = app.add_subcommand("ingest", "Load and validate a corpus; print statistics and defects");

    ClusterOptions c;
    std::size_t fixed_k = 0;
    auto* cluster = app.add_subcommand("cluster", "Elbow sweep, knee detection and final k-means model");
    cluster->add_option("--k-min", c.k_min, "Smallest candidate k")->capture_default_str();
    cluster->add_option("--k-max", c.k_max, "Largest candidate k")->capture_default_str();
    cluster->add_option("--k-step", c.k_step, "Candidate k step")->capture_default_str();
    cluster->add_option("--restarts", c.restarts, "k-means restarts per sweep candidate")->capture_default_str();
    cluster->add_option("--final-restarts", c.final_restarts, "k-means restarts for the final model")
        ->capture_default_str();
    auto* k_opt = cluster->add_option("--k", fixed_k, "Skip the sweep and cluster with this k");

    std::string model_path, order = "hue";
    auto* palette = app.add_subcommand("palette", "Build the palette from a corpus and model; export swatches");
    palette->add_option("--model", model_path, "Model JSON (default <out>/model.json)");
    palette->add_option("--order", order, "Swatch order")->check(CLI::IsMember({"hue", "id"}))->capture_default_str();

    std::string color;
    auto* name = app.add_subcommand("name", "Name a color with the nearest palette entry");
    name->add_option("color", color, "#rrggbb or R,G,B")->required();

    std::string query;
    std::size_t max_distance = kDefaultMaxEditDistance;
    auto* lookup = app.add_subcommand("lookup", "Find palette entries carrying a name");
    lookup->add_option("query", query, "Color name")->required();
    lookup->add_option("--max-distance", max_distance, "Edit distance for fuzzy matches")->capture_default_str();

    TagOptions t;
    const auto add_tag_options = [&](CLI::App* sub) {
        sub->add_option("--colors", t.colors, "Dominant colors to extract")->capture_default_str();
        sub->add_option("--stride", t.stride, "Keep every n-th pixel")->capture_default_str();
        sub->add_flag("--suppress-white", t.suppress_white, "Ignore near-white pixels");
    };
    std::string image;
    auto* tag = app.add_subcommand("tag", "Name the dominant color of one image");
    tag->add_option("image", image, "PNG or JPEG file")->required();
    add_tag_options(tag);

    std::string image_dir;
    auto* index = app.add_subcommand("index", "Tag every image in a directory (default output <dir>.index.json)");
    index->add_option("dir", image_dir, "Directory of PNG/JPEG files")->required();
    add_tag_options(index);

    std::string index_path;
    std::size_t search_distance = kDefaultMaxEditDistance;
    auto* search = app.add_subcommand("search", "Find indexed images by color name");
    search->add_option("query", query, "Color name")->required();
    search->add_option("--index", index_path, "Index JSON written by 'index'")->required();
    search->add_option("--max-distance", search_distance, "Edit distance for fuzzy matches")->capture_default_str();

    for (auto* sub : app.get_subcommands({})) add_global_options(sub);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (ingest->parsed()) cmd_ingest(g, out, err);
        if (cluster->parsed()) {
            if (k_opt->count() > 0) c.k = fixed_k;
            cmd_cluster(g, c, out, err);
        }
        if (palette->parsed()) cmd_palette(g, model_path, order, out, err);
        if (name->parsed()) cmd_name(g, color, out, err);
        if (lookup->parsed()) cmd_lookup(g, query, max_distance, out, err);
        if (tag->parsed()) cmd_tag(g, image, t, out, err);
        if (index->parsed()) cmd_index(g, image_dir, t, out, err);
        if (search->parsed()) cmd_search(g, index_path, query, search_distance, out, err);
    } catch (const Error& e) {
        err << "error code=" << to_string(e.code()) << " message=" << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error code=Internal message=" << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace chromaname::cli

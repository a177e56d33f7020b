// Command-line front end. All engine work goes through the C interface in
// rcms.h; this file only parses arguments, moves strings, and writes files.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "rcms.h"

namespace {

int fail(rcms_engine* engine, rcms_status status) {
    std::cerr << "error: " << rcms_engine_last_error(engine) << "\n";
    return static_cast<int>(status);
}

// Prints and frees an engine-owned string.
void emit(char* text) {
    std::cout << text;
    rcms_string_free(text);
}

bool read_file(const std::string& path, std::string* out) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return false;
    std::ostringstream buf;
    buf << is.rdbuf();
    *out = buf.str();
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RC-matrix enumeration and degree-4 vacuum-graph toolkit"};
    app.set_version_flag("--version", rcms_version());
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = all available cores)")
        ->check(CLI::Range(0, 256));

    int order = 0, margin = 4;

    auto* cmd_enumerate =
        app.add_subcommand("enumerate", "class representatives with orbit sizes");
    std::string checkpoint, enum_format = "json";
    cmd_enumerate->add_option("--order", order, "matrix dimension m")->required();
    cmd_enumerate->add_option("--margin", margin, "row/column sum (default 4)");
    cmd_enumerate->add_option("--checkpoint", checkpoint,
                              "stage checkpoint file (default: under $RCMS_CHECKPOINT_DIR)");
    cmd_enumerate->add_option("--format", enum_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* cmd_graphs =
        app.add_subcommand("graphs", "merged multigraph records with multiplicities");
    std::string dot_dir, graphs_format = "json";
    bool connected_only = false;
    cmd_graphs->add_option("--order", order, "matrix dimension m")->required();
    cmd_graphs->add_option("--dot", dot_dir, "write one DOT file per graph into this directory");
    cmd_graphs->add_flag("--connected-only", connected_only, "restrict output to connected graphs");
    cmd_graphs->add_option("--format", graphs_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* cmd_decompose =
        app.add_subcommand("decompose", "convex decompositions into permutation matrices");
    std::vector<std::string> matrix_files;
    int class_index = 0;
    cmd_decompose->add_option("--matrix", matrix_files,
                              "matrix file (repeatable; adds pairwise verdicts)");
    cmd_decompose->add_option("--order", order, "matrix dimension m (with --class)");
    cmd_decompose->add_option("--class", class_index,
                              "1-based class representative index (with --order)");

    auto* cmd_verify =
        app.add_subcommand("verify", "replay the reference tables for one order");
    bool with_oracle = false;
    cmd_verify->add_option("--order", order, "matrix dimension m")->required();
    cmd_verify->add_flag("--oracle", with_oracle, "also run the independent matching oracle");

    auto* cmd_count = app.add_subcommand("count", "total matrix count and class count");
    cmd_count->add_option("--order", order, "matrix dimension m")->required();
    cmd_count->add_option("--margin", margin, "row/column sum (default 4)");

    // let global options (--threads) appear after the subcommand name
    for (CLI::App* sub : {cmd_enumerate, cmd_graphs, cmd_decompose, cmd_verify, cmd_count})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(RCMS_ERR_INVALID_ARG);
    }

    rcms_engine* engine = rcms_engine_new();
    if (engine == nullptr) {
        std::cerr << "error: engine allocation failed\n";
        return static_cast<int>(RCMS_ERR_INTERNAL);
    }
    struct EngineGuard {
        rcms_engine* e;
        ~EngineGuard() { rcms_engine_free(e); }
    } guard{engine};

    if (threads == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    rcms_engine_set_threads(engine, threads);

    if (cmd_enumerate->parsed()) {
        if (checkpoint.empty()) {
            const char* dir = std::getenv("RCMS_CHECKPOINT_DIR");
            if (dir != nullptr && dir[0] != '\0')
                checkpoint = std::string(dir) + "/enum_m" + std::to_string(order) +
                             "_d" + std::to_string(margin) + ".ckpt";
        }
        char* out = nullptr;
        rcms_status st = rcms_enumerate(engine, order, margin,
                                        checkpoint.empty() ? nullptr : checkpoint.c_str(),
                                        enum_format == "csv" ? 1 : 0, &out);
        if (st != RCMS_OK) return fail(engine, st);
        emit(out);
        return 0;
    }

    if (cmd_graphs->parsed()) {
        char* out = nullptr;
        rcms_status st = rcms_graphs(engine, order, connected_only ? 1 : 0,
                                     graphs_format == "csv" ? 1 : 0, &out);
        if (st != RCMS_OK) return fail(engine, st);
        emit(out);
        if (!dot_dir.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(dot_dir, ec);
            if (ec) {
                std::cerr << "error: cannot create " << dot_dir << ": " << ec.message() << "\n";
                return static_cast<int>(RCMS_ERR_INVALID_ARG);
            }
            int total = 0, connected = 0;
            st = rcms_graphs_count(engine, order, &total, &connected);
            if (st != RCMS_OK) return fail(engine, st);
            const int n = connected_only ? connected : total;  // connected records lead
            for (int k = 1; k <= n; ++k) {
                char* dot = nullptr;
                st = rcms_graph_dot(engine, order, k, &dot);
                if (st != RCMS_OK) return fail(engine, st);
                const std::string path = dot_dir + "/g" + std::to_string(order) + "_" +
                                         std::to_string(k) + ".dot";
                std::ofstream os(path, std::ios::trunc);
                os << dot;
                rcms_string_free(dot);
                if (!os) {
                    std::cerr << "error: cannot write " << path << "\n";
                    return static_cast<int>(RCMS_ERR_INVALID_ARG);
                }
            }
        }
        return 0;
    }

    if (cmd_decompose->parsed()) {
        const bool by_class = class_index > 0;
        if (matrix_files.empty() == !by_class) {
            std::cerr << "error: decompose needs either --matrix or --order with --class\n";
            return static_cast<int>(RCMS_ERR_INVALID_ARG);
        }
        char* out = nullptr;
        rcms_status st;
        if (by_class) {
            st = rcms_decompose_class(engine, order, margin, class_index, &out);
        } else {
            std::string text, chunk;
            for (const std::string& path : matrix_files) {
                if (!read_file(path, &chunk)) {
                    std::cerr << "error: cannot read " << path << "\n";
                    return static_cast<int>(RCMS_ERR_INVALID_ARG);
                }
                text += chunk;
                text += "\n\n";  // line numbers refer to this combined input
            }
            st = rcms_decompose_text(engine, text.c_str(), &out);
        }
        if (st != RCMS_OK) return fail(engine, st);
        emit(out);
        return 0;
    }

    if (cmd_verify->parsed()) {
        char* out = nullptr;
        int all_pass = 0;
        rcms_status st = rcms_verify(engine, order, with_oracle ? 1 : 0, &out, &all_pass);
        if (st != RCMS_OK) return fail(engine, st);
        emit(out);
        return all_pass ? 0 : 1;
    }

    // count (require_subcommand(1) guarantees exactly one matched)
    char* out = nullptr;
    rcms_status st = rcms_count(engine, order, margin, &out);
    if (st != RCMS_OK) return fail(engine, st);
    emit(out);
    return 0;
}

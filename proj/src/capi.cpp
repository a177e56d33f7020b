#include "rcms.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "matrix.hpp"
#include "report.hpp"

struct rcms_engine {
    rcms::OrderCache cache{1};
    std::string last_error;
};

namespace {

char* copy_out(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p == nullptr) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

// Runs `body`, translating exceptions into status codes and recording the
// message on the engine. The C surface never lets an exception escape.
template <typename Fn>
rcms_status guarded(rcms_engine* engine, Fn&& body) {
    if (engine == nullptr) return RCMS_ERR_INVALID_ARG;
    engine->last_error.clear();
    try {
        body();
        return RCMS_OK;
    } catch (const rcms::parse_error& e) {
        engine->last_error = e.what();
        return RCMS_ERR_PARSE;
    } catch (const rcms::unsupported_error& e) {
        engine->last_error = e.what();
        return RCMS_ERR_UNSUPPORTED;
    } catch (const rcms::checkpoint_error& e) {
        engine->last_error = e.what();
        return RCMS_ERR_CHECKPOINT;
    } catch (const std::invalid_argument& e) {
        engine->last_error = e.what();
        return RCMS_ERR_INVALID_ARG;
    } catch (const std::exception& e) {
        engine->last_error = e.what();
        return RCMS_ERR_INTERNAL;
    } catch (...) {
        engine->last_error = "unknown failure";
        return RCMS_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* rcms_version(void) { return rcms::kToolVersion; }

rcms_engine* rcms_engine_new(void) {
    try {
        return new rcms_engine;
    } catch (...) {
        return nullptr;
    }
}

void rcms_engine_free(rcms_engine* engine) { delete engine; }

rcms_status rcms_engine_set_threads(rcms_engine* engine, int threads) {
    return guarded(engine, [&] { engine->cache.set_threads(threads); });
}

const char* rcms_engine_last_error(const rcms_engine* engine) {
    return engine == nullptr ? "null engine" : engine->last_error.c_str();
}

void rcms_string_free(char* s) { std::free(s); }

rcms_status rcms_count(rcms_engine* engine, int m, int d, char** out_json) {
    return guarded(engine, [&] {
        if (out_json == nullptr) throw std::invalid_argument("out_json is null");
        *out_json = copy_out(rcms::count_json(engine->cache, m, d));
    });
}

rcms_status rcms_enumerate(rcms_engine* engine, int m, int d,
                           const char* checkpoint_path, int as_csv,
                           char** out_text) {
    return guarded(engine, [&] {
        if (out_text == nullptr) throw std::invalid_argument("out_text is null");
        std::string path;
        const std::string* path_ptr = nullptr;
        if (checkpoint_path != nullptr && checkpoint_path[0] != '\0') {
            path = checkpoint_path;
            path_ptr = &path;
        }
        *out_text = copy_out(as_csv
                                 ? rcms::enumerate_csv(engine->cache, m, d, path_ptr)
                                 : rcms::enumerate_json(engine->cache, m, d, path_ptr));
    });
}

rcms_status rcms_graphs(rcms_engine* engine, int m, int connected_only,
                        int as_csv, char** out_text) {
    return guarded(engine, [&] {
        if (out_text == nullptr) throw std::invalid_argument("out_text is null");
        if (as_csv) {
            if (m < 1 || m > rcms::kMaxDim)
                throw rcms::unsupported_error("graph assembly supports orders 1.." +
                                              std::to_string(rcms::kMaxDim));
            *out_text = copy_out(
                rcms::records_csv(engine->cache.records(m), m, connected_only != 0));
        } else {
            *out_text = copy_out(
                rcms::graphs_json(engine->cache, m, connected_only != 0));
        }
    });
}

rcms_status rcms_graphs_count(rcms_engine* engine, int m, int* out_total,
                              int* out_connected) {
    return guarded(engine, [&] {
        if (out_total == nullptr || out_connected == nullptr)
            throw std::invalid_argument("output pointer is null");
        if (m < 1 || m > rcms::kMaxDim)
            throw rcms::unsupported_error("graph assembly supports orders 1.." +
                                          std::to_string(rcms::kMaxDim));
        const auto& recs = engine->cache.records(m);
        int connected = 0;
        for (const auto& r : recs) connected += r.connected ? 1 : 0;
        *out_total = static_cast<int>(recs.size());
        *out_connected = connected;
    });
}

rcms_status rcms_graph_dot(rcms_engine* engine, int m, int index,
                           char** out_dot) {
    return guarded(engine, [&] {
        if (out_dot == nullptr) throw std::invalid_argument("out_dot is null");
        if (m < 1 || m > rcms::kMaxDim)
            throw rcms::unsupported_error("graph assembly supports orders 1.." +
                                          std::to_string(rcms::kMaxDim));
        const auto& recs = engine->cache.records(m);
        if (index < 1 || static_cast<std::size_t>(index) > recs.size())
            throw std::invalid_argument("graph index out of range 1.." +
                                        std::to_string(recs.size()));
        const std::size_t i = static_cast<std::size_t>(index) - 1;
        *out_dot = copy_out(rcms::to_dot(recs[i].graph, rcms::graph_id(m, i)));
    });
}

rcms_status rcms_decompose_text(rcms_engine* engine, const char* text,
                                char** out_json) {
    return guarded(engine, [&] {
        if (out_json == nullptr) throw std::invalid_argument("out_json is null");
        if (text == nullptr) throw std::invalid_argument("text is null");
        *out_json = copy_out(
            rcms::decompose_report_json(rcms::parse_matrix_blocks(text)));
    });
}

rcms_status rcms_decompose_class(rcms_engine* engine, int m, int d,
                                 int class_index, char** out_json) {
    return guarded(engine, [&] {
        if (out_json == nullptr) throw std::invalid_argument("out_json is null");
        if (m < 1 || m > rcms::kMaxDim)
            throw rcms::unsupported_error("enumeration supports orders 1.." +
                                          std::to_string(rcms::kMaxDim));
        if (d < 1 || d > 5)
            throw rcms::unsupported_error("enumeration supports margins 1..5");
        const auto& classes = engine->cache.classes(m, d);
        if (class_index < 1 || static_cast<std::size_t>(class_index) > classes.size())
            throw std::invalid_argument("class index out of range 1.." +
                                        std::to_string(classes.size()));
        *out_json = copy_out(rcms::decompose_report_json(
            {classes[static_cast<std::size_t>(class_index) - 1].rep}));
    });
}

rcms_status rcms_verify(rcms_engine* engine, int m, int with_oracle,
                        char** out_json, int* out_all_pass) {
    return guarded(engine, [&] {
        if (out_json == nullptr) throw std::invalid_argument("out_json is null");
        rcms::VerifyOutcome outcome =
            rcms::verify_order(engine->cache, m, with_oracle != 0);
        *out_json = copy_out(outcome.json);
        if (out_all_pass != nullptr) *out_all_pass = outcome.all_pass ? 1 : 0;
    });
}

}  // extern "C"

#include <charconv>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ontoview/config.hpp"
#include "ontoview/document.hpp"
#include "ontoview/http_server.hpp"
#include "ontoview/render.hpp"
#include "ontoview/service.hpp"
#include "ontoview/view_state.hpp"

using namespace ontoview;

namespace {

constexpr int kOk = 0;
constexpr int kLoadFailed = 1;
constexpr int kBadArguments = 2;

struct LoadOptions {
    std::string file;
    bool reasoner_check = false;
    std::string summarize;
    std::vector<std::string> window;
    std::string svg;
    std::string dot;
    bool stats = false;
};

struct ServeOptions {
    std::optional<std::string> host;
    std::optional<int> port;
    std::optional<std::string> static_dir;
};

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return false;
    }
    return true;
}

std::optional<ClassExpression> window_bound(const std::string& text, const Ontology& ontology) {
    std::vector<ParseError> errors;
    auto ce = parse_class_expression(text, ontology.prefixes, &errors);
    if (!ce) {
        std::cerr << "bad class expression '" << text << "'";
        if (!errors.empty()) {
            std::cerr << ": " << to_string(errors.front());
        }
        std::cerr << "\n";
    }
    return ce;
}

/// Every drawn isA edge must be entailed and every node distinct from its parents.
int reasoner_check(const Document& doc, const OntoGraph& graph) {
    const Reasoner& r = doc.reasoner();
    std::size_t failures = 0;
    std::size_t edges = 0;
    for (const auto& [child, parent] : graph.isa_edges()) {
        ++edges;
        const auto& c = graph.expression(child);
        const auto& p = graph.expression(parent);
        if (!r.is_subsumed(c, p) || r.is_equivalent(c, p)) {
            ++failures;
            std::cerr << "reasoner check: edge " << graph.nodes[child].label << " -> " << graph.nodes[parent].label
                      << " is not a strict subsumption\n";
        }
    }
    std::size_t unsatisfiable = 0;
    for (const auto& iri : doc.ontology().signature().classes) {
        unsatisfiable += r.is_unsatisfiable(ClassExpression::named(iri)) ? 1 : 0;
    }
    std::cout << "reasoner check: consistent, " << edges << " isA edges verified, " << failures << " failures, "
              << unsatisfiable << " unsatisfiable classes\n";
    return failures == 0 ? kOk : kLoadFailed;
}

void print_stats(const Document& doc, const LoadResult& loaded, const OntoGraph& graph, double build_ms,
                 double layout_ms) {
    const auto& o = doc.ontology();
    std::size_t anonymous = 0;
    for (const auto& n : graph.nodes) {
        anonymous += n.kind == NodeKind::Anonymous ? 1 : 0;
    }
    auto row = [](const char* name, auto value) { std::cout << std::left << std::setw(24) << name << value << "\n"; };
    row("classes", o.signature().classes.size());
    row("object properties", o.signature().object_properties.size());
    row("data properties", o.signature().data_properties.size());
    row("individuals", o.signature().individuals.size());
    row("axioms", o.axioms().size());
    row("skipped axioms", o.skipped().size());
    row("GCIs", o.gci_count());
    row("class expressions", doc.harvested().size());
    row("graph nodes", graph.size());
    row("anonymous nodes", anonymous);
    row("isA edges", graph.isa_edges().size());
    std::cout << std::fixed << std::setprecision(2);
    row("parse ms", loaded.parse_ms);
    row("classify ms", doc.classify_ms());
    row("build ms", build_ms);
    row("layout ms", layout_ms);
}

int run_load(const LoadOptions& opt, const Config& config) {
    const auto loaded = load_file(opt.file);
    if (!loaded.errors.empty()) {
        for (const auto& e : loaded.errors) {
            std::cerr << opt.file << ":" << to_string(e) << "\n";
        }
        return kLoadFailed;
    }
    if (!loaded.ok()) {
        std::cerr << opt.file << ": " << loaded.failure << "\n";
        return kLoadFailed;
    }
    const Document& doc = *loaded.document;

    DetailWindow window;
    if (!opt.window.empty()) {
        auto upper = window_bound(opt.window[0], doc.ontology());
        auto lower = window_bound(opt.window[1], doc.ontology());
        if (!upper || !lower) {
            return kBadArguments;
        }
        window = {*upper, *lower};
    }

    ScorerRegistry scorers(config.relevance);
    std::optional<SummaryRequest> summary;
    if (!opt.summarize.empty()) {
        const auto colon = opt.summarize.find(':');
        SummaryRequest req;
        req.method = opt.summarize.substr(0, colon);
        std::size_t n = 0;
        const auto count = colon == std::string::npos ? std::string() : opt.summarize.substr(colon + 1);
        const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), n);
        if (!scorers.contains(req.method) || ec != std::errc() || ptr != count.data() + count.size() || n == 0) {
            std::cerr << "--summarize expects METHOD:N with METHOD one of";
            for (const auto& name : scorers.names()) {
                std::cerr << " " << name;
            }
            std::cerr << " and N >= 1\n";
            return kBadArguments;
        }
        req.n = n;
        summary = req;
    }

    Stopwatch clock;
    std::shared_ptr<const OntoGraph> graph;
    try {
        graph = std::make_shared<const OntoGraph>(doc.build(window));
    } catch (const InvalidWindowError& e) {
        std::cerr << e.what() << "\n";
        return kBadArguments;
    }
    const Explorer explorer(graph, scorers.score(config.view.relevance, *graph));
    ViewState state = explorer.initial_state();
    if (summary) {
        explorer.show_only(state, ontoview::summarize(*graph, *summary, scorers.score(summary->method, *graph)));
    } else {
        explorer.set_slider(state, OntoGraph::kThing, 100.0);
    }
    const double build_ms = clock.lap();
    const auto layout = layout_view(explorer, state, config.layout);
    const double layout_ms = clock.lap();

    if (opt.stats) {
        print_stats(doc, loaded, *graph, build_ms, layout_ms);
    }
    int status = kOk;
    if (opt.reasoner_check) {
        status = reasoner_check(doc, *graph);
    }
    if (!opt.svg.empty() && !write_file(opt.svg, export_svg(explorer, state, layout, config.layout))) {
        status = kLoadFailed;
    }
    if (!opt.dot.empty() && !write_file(opt.dot, export_dot(explorer, layout))) {
        status = kLoadFailed;
    }
    return status;
}

int run_serve(const ServeOptions& opt, Config config) {
    if (opt.host) {
        config.server.host = *opt.host;
    }
    if (opt.port) {
        config.server.port = *opt.port;
    }
    if (opt.static_dir) {
        config.server.static_dir = *opt.static_dir;
    }
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    Service service(config);
    HttpServer server(service);
    int port = 0;
    try {
        port = server.bind(config.server.host, config.server.port);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kLoadFailed;
    }
    std::cout << "listening on http://" << config.server.host << ":" << port << std::endl;
    std::thread waiter([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    });
    server.run();
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ontology hierarchy viewer: batch export and HTTP server"};
    app.require_subcommand(1);
    std::optional<std::string> config_path;
    app.add_option("--config", config_path, "Config file (default: $ONTOVIEW_CONFIG)");

    LoadOptions load;
    auto* load_cmd = app.add_subcommand("load", "Parse, classify and optionally summarize and export an ontology");
    load_cmd->add_option("file", load.file, "OWL functional-syntax file")->required()->check(CLI::ExistingFile);
    load_cmd->add_flag("--reasoner-check", load.reasoner_check, "Verify every drawn isA edge against the reasoner");
    load_cmd->add_option("--summarize", load.summarize, "METHOD:N, e.g. pagerank:20");
    load_cmd->add_option("--detail-window", load.window, "UPPER LOWER class expressions")->expected(2);
    load_cmd->add_option("--export", load.svg, "Write the view as SVG");
    load_cmd->add_option("--export-dot", load.dot, "Write the view as Graphviz DOT");
    load_cmd->add_flag("--stats", load.stats, "Print counts and timings");

    ServeOptions serve;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    serve_cmd->add_option("--host", serve.host, "Bind address");
    serve_cmd->add_option("--port", serve.port, "Port, 0 for any free port")->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--static", serve.static_dir, "Directory served at /")->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadArguments;
    }

    Config config;
    try {
        config = resolve_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kBadArguments;
    }
    if (load_cmd->parsed()) {
        return run_load(load, config);
    }
    try {
        return run_serve(serve, config);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kBadArguments;
    }
}

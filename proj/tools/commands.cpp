/*
 * Copyright 2026 The Frechet Oracle Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *  http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#include "commands.hpp"

#include "service.hpp"

#include "frechet/distance.hpp"
#include "frechet/error.hpp"
#include "frechet/general.hpp"
#include "frechet/meb.hpp"
#include "frechet/serialize.hpp"
#include "frechet/simplify.hpp"
#include "frechet/streaming.hpp"
#include "frechet/subcurve.hpp"
#include "frechet/symmetric.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace frechet::tools {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Options shared by the subcommands; also the keys of a --config file.
struct Config {
    std::size_t k = 0;
    double eps = 0.25;
    std::string meb = "kernel";
    std::string host = "127.0.0.1";
    int port = 8080;
    std::uint64_t seed = 1;
};

std::size_t need_k(const Config& c)
{
    if (c.k == 0) throw UsageError("--k is required for this command");
    return c.k;
}

void write_index(const std::string& path, const Curve& p, SectionType type, const std::string& payload)
{
    IndexFile f;
    ByteWriter wc;
    wc.curve(p);
    f.add(SectionType::curve, wc.take());
    f.add(type, payload);
    f.save(path);
}

template <class T>
std::string dump(const T& obj)
{
    ByteWriter w;
    obj.save(w);
    return w.take();
}

template <class T>
T load_section(const IndexFile& f, SectionType type)
{
    ByteReader r(f.get(type));
    T obj = T::load(r);
    r.expect_done();
    return obj;
}

std::size_t parse_index_arg(const std::string& s)
{
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.empty() || s[0] == '-') throw UsageError("not an index: " + s);
    return static_cast<std::size_t>(v);
}

int cmd_stream(const Config& cfg, const std::string& resume, const std::string& checkpoint, std::istream& in,
               std::ostream& out)
{
    std::optional<StreamingOracle> o;
    if (!resume.empty()) {
        const auto f = IndexFile::load(resume);
        o = load_section<StreamingOracle>(f, SectionType::streaming);
    }
    const std::size_t k = o ? o->k() : need_k(cfg);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (line[first] == '?') {
            auto path = line.substr(first + 1);
            path.erase(0, path.find_first_not_of(" \t"));
            path.erase(path.find_last_not_of(" \t\r") + 1);
            if (!o || o->points_read() == 0) throw InvalidArgument("query before any stream point");
            const auto q = read_curve_file(path);
            const auto t = o->trace(q);
            out << format_double(t.value) << " branch=" << t.branch << "\n";
            spdlog::debug("stream query at {} points: branch {} leaper {} band {}", o->points_read(), t.branch,
                          t.leaper, t.band);
            continue;
        }
        std::istringstream ls(line);
        std::vector<double> p;
        std::string tok;
        while (ls >> tok) {
            std::size_t pos = 0;
            double v = 0;
            try {
                v = std::stod(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size()) throw FormatError("line " + std::to_string(lineno) + ": bad number " + tok);
            p.push_back(v);
        }
        if (!o) o.emplace(k, cfg.eps, p.size());
        if (p.size() != o->dim())
            throw DimensionMismatch("line " + std::to_string(lineno) + ": expected " + std::to_string(o->dim()) +
                                    " coordinates");
        o->add(p);
    }
    if (!checkpoint.empty()) {
        if (!o) throw InvalidArgument("no points read; nothing to checkpoint");
        IndexFile f;
        f.add(SectionType::streaming, dump(*o));
        f.save(checkpoint);
    }
    return 0;
}

std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) v.push_back(std::stod(tok));
    if (v.empty()) throw UsageError("empty list: " + s);
    return v;
}

int cmd_bench(const Config& cfg, const std::string& ms, const std::string& ks, const std::string& ds,
              const std::string& es, int queries, std::ostream& out)
{
    using clock = std::chrono::steady_clock;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-10, 10);
    auto rand_curve = [&](std::size_t m, std::size_t d) {
        std::vector<double> c(m * d);
        for (auto& x : c) x = u(rng);
        return Curve(d, std::move(c));
    };
    out << "structure,m,k,d,eps,build_ms,query_us,bytes\n";
    for (double mv : parse_list(ms))
        for (double kv : parse_list(ks))
            for (double dv : parse_list(ds))
                for (double eps : parse_list(es)) {
                    const auto m = static_cast<std::size_t>(mv), k = static_cast<std::size_t>(kv),
                               d = static_cast<std::size_t>(dv);
                    if (k >= m) continue;
                    const auto p = rand_curve(m, d);
                    std::vector<Curve> qs;
                    for (int i = 0; i < queries; ++i) qs.push_back(rand_curve(k, d));
                    auto row = [&](const char* name, double build, double query, std::size_t bytes) {
                        out << name << "," << m << "," << k << "," << d << "," << eps << "," << build << ","
                            << query << "," << bytes << "\n";
                    };
                    auto ms_since = [](clock::time_point t) {
                        return std::chrono::duration<double, std::milli>(clock::now() - t).count();
                    };
                    {
                        auto t0 = clock::now();
                        GeneralOracle g(p, k, eps);
                        const double build = ms_since(t0);
                        t0 = clock::now();
                        double sink = 0;
                        for (const auto& q : qs) sink += g.query(q);
                        const double per = ms_since(t0) * 1000 / std::max(queries, 1);
                        spdlog::debug("checksum {}", sink);
                        row("general", build, per, dump(g).size());
                    }
                    {
                        auto t0 = clock::now();
                        ZoomHierarchy z(p, k, eps);
                        const double build = ms_since(t0);
                        std::uniform_int_distribution<std::size_t> ui(1, m);
                        t0 = clock::now();
                        std::size_t sink = 0;
                        for (int i = 0; i < queries; ++i) {
                            std::size_t a = ui(rng), b = ui(rng);
                            if (a == b) continue;
                            sink += z.query(std::min(a, b), std::max(a, b)).curve.size();
                        }
                        const double per = ms_since(t0) * 1000 / std::max(queries, 1);
                        spdlog::debug("checksum {}", sink);
                        row("zoom", build, per, dump(z).size());
                    }
                    {
                        auto t0 = clock::now();
                        StreamingOracle s(k, eps, d);
                        s.add_all(p);
                        const double build = ms_since(t0);
                        t0 = clock::now();
                        double sink = 0;
                        for (const auto& q : qs) sink += s.query(q);
                        const double per = ms_since(t0) * 1000 / std::max(queries, 1);
                        spdlog::debug("checksum {}", sink);
                        row("streaming", build, per, dump(s).size());
                    }
                }
    return 0;
}

} // namespace

void setup_logging()
{
    static bool done = false;
    if (!done) {
        done = true;
        auto logger = spdlog::stderr_logger_mt("frechet");
        logger->set_pattern("[%H:%M:%S.%e] [%l] %v");
        spdlog::set_default_logger(logger);
    }
    spdlog::set_level(spdlog::level::info);
    if (const char* env = std::getenv("FRECHET_LOG")) {
        const auto lvl = spdlog::level::from_str(env);
        // from_str maps unknown names to off; only accept "off" when asked for
        if (lvl != spdlog::level::off || std::string(env) == "off")
            spdlog::set_level(lvl);
        else
            spdlog::warn("FRECHET_LOG: unknown level '{}', using info", env);
    }
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Discrete Frechet distance oracles, simplifications and zoom indexes"};
    app.name("frechet");
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file mirroring the long options");

    Config cfg;
    auto eps_check = CLI::Validator(
        [](std::string& s) -> std::string {
            double v = 0;
            try {
                v = std::stod(s);
            } catch (const std::exception&) {
                return "eps must be a number";
            }
            if (!(v > 0 && v <= 0.5)) return "eps must lie in (0, 1/2], got " + s;
            return {};
        },
        "EPS in (0,1/2]");
    app.add_option("--k", cfg.k, "simplification / query length")->check(CLI::PositiveNumber);
    app.add_option("--eps", cfg.eps, "approximation parameter")->check(eps_check)->capture_default_str();
    app.add_option("--meb", cfg.meb, "streaming MEB variant")
        ->check(CLI::IsMember({"exact", "two", "kernel"}))
        ->capture_default_str();
    app.add_option("--host", cfg.host, "service bind address")->capture_default_str();
    app.add_option("--port", cfg.port, "service port (0 picks a free one)")
        ->check(CLI::Range(0, 65535))
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "random seed for bench")->capture_default_str();

    // dfd
    auto* dfd = app.add_subcommand("dfd", "exact discrete Frechet distance of two curve files");
    std::string fa, fb;
    dfd->add_option("a", fa)->required()->check(CLI::ExistingFile);
    dfd->add_option("b", fb)->required()->check(CLI::ExistingFile);

    // simplify
    auto* simp = app.add_subcommand("simplify", "k-point simplification with a certified bound");
    std::string simp_in;
    bool simp_stream = false;
    simp->add_flag("--stream", simp_stream, "read the curve as a stream");
    simp->add_option("curve", simp_in)->required()->check(CLI::ExistingFile);

    // oracle build|query
    auto* orc = app.add_subcommand("oracle", "static distance oracle");
    orc->require_subcommand(1);
    auto* orc_build = orc->add_subcommand("build", "build an oracle index");
    std::string orc_curve, orc_out, orc_index, orc_query;
    bool orc_sym = false;
    orc_build->add_option("curve", orc_curve)->required()->check(CLI::ExistingFile);
    orc_build->add_option("-o,--output", orc_out)->required();
    orc_build->add_flag("--symmetric", orc_sym, "symmetric oracle for queries as long as the curve");
    auto* orc_q = orc->add_subcommand("query", "query an oracle index");
    orc_q->add_option("index", orc_index)->required()->check(CLI::ExistingFile);
    orc_q->add_option("query", orc_query)->required()->check(CLI::ExistingFile);

    // stream
    auto* strm = app.add_subcommand("stream", "streaming oracle over points read from standard input");
    std::string resume, checkpoint;
    strm->add_option("--resume", resume, "continue from a checkpoint")->check(CLI::ExistingFile);
    strm->add_option("--checkpoint", checkpoint, "write the final state here");

    // zoom build|query
    auto* zm = app.add_subcommand("zoom", "zoom-in index");
    zm->require_subcommand(1);
    auto* zm_build = zm->add_subcommand("build", "build a zoom index");
    std::string zm_curve, zm_out, zm_index, zi, zj;
    zm_build->add_option("curve", zm_curve)->required()->check(CLI::ExistingFile);
    zm_build->add_option("-o,--output", zm_out)->required();
    auto* zm_q = zm->add_subcommand("query", "simplification of P[i..j]");
    zm_q->add_option("index", zm_index)->required()->check(CLI::ExistingFile);
    zm_q->add_option("i", zi)->required();
    zm_q->add_option("j", zj)->required();

    // subq build|query
    auto* sq = app.add_subcommand("subq", "subcurve distance oracle");
    sq->require_subcommand(1);
    auto* sq_build = sq->add_subcommand("build", "build a subcurve oracle index");
    std::string sq_curve, sq_out, sq_index, si, sj, sq_query;
    sq_build->add_option("curve", sq_curve)->required()->check(CLI::ExistingFile);
    sq_build->add_option("-o,--output", sq_out)->required();
    auto* sq_q = sq->add_subcommand("query", "distance from P[i..j] to a query curve");
    sq_q->add_option("index", sq_index)->required()->check(CLI::ExistingFile);
    sq_q->add_option("i", si)->required();
    sq_q->add_option("j", sj)->required();
    sq_q->add_option("query", sq_query)->required()->check(CLI::ExistingFile);

    // serve
    auto* srv = app.add_subcommand("serve", "HTTP query service over zoom/subcurve indexes");
    std::string srv_curve;
    std::vector<std::string> srv_index;
    srv->add_option("--curve", srv_curve, "raw curve file")->required()->check(CLI::ExistingFile);
    srv->add_option("--index", srv_index, "index file(s)")->required()->check(CLI::ExistingFile);

    // bench
    auto* bench = app.add_subcommand("bench", "CSV of build/query timings and sizes");
    std::string bm = "8,16,32", bk = "1,2", bd = "1,2", be = "0.5,0.25";
    int bq = 50;
    bench->add_option("--m", bm, "curve lengths")->capture_default_str();
    bench->add_option("--ks", bk, "query lengths")->capture_default_str();
    bench->add_option("--d", bd, "dimensions")->capture_default_str();
    bench->add_option("--eps-list", be, "eps values")->capture_default_str();
    bench->add_option("--queries", bq, "queries per row")->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "frechet: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*dfd) {
            out << format_double(discrete_frechet(read_curve_file(fa), read_curve_file(fb))) << "\n";
            return 0;
        }
        if (*simp) {
            const std::size_t k = need_k(cfg);
            const auto p = read_curve_file(simp_in);
            Simplification s;
            if (simp_stream) {
                const auto proto = make_streaming_meb(parse_meb_kind(cfg.meb), p.dim(), cfg.eps);
                auto ms = make_streaming_simplifier(k, cfg.eps, *proto);
                for (std::size_t i = 0; i < p.size(); ++i) ms.add(p[i]);
                s = ms.current();
            } else {
                s = static_k_simplification(p, k, cfg.eps);
            }
            out << "# certified: " << format_double(s.certified) << "\n";
            write_curve(out, s.pi);
            return 0;
        }
        if (*orc_build) {
            const auto p = read_curve_file(orc_curve);
            if (orc_sym) {
                SymmetricOracle o(p, cfg.eps);
                write_index(orc_out, p, SectionType::symmetric, dump(o));
            } else {
                GeneralOracle o(p, need_k(cfg), cfg.eps);
                write_index(orc_out, p, SectionType::general, dump(o));
            }
            return 0;
        }
        if (*orc_q) {
            const auto f = IndexFile::load(orc_index);
            const auto q = read_curve_file(orc_query);
            if (f.has(SectionType::general)) {
                const auto o = load_section<GeneralOracle>(f, SectionType::general);
                const auto t = o.trace(q);
                out << format_double(t.value) << " branch=" << t.branch << " probes=" << t.probes << "\n";
            } else {
                const auto o = load_section<SymmetricOracle>(f, SectionType::symmetric);
                const auto t = o.trace(q);
                out << format_double(t.value) << " case=" << t.which << "\n";
            }
            return 0;
        }
        if (*strm) return cmd_stream(cfg, resume, checkpoint, in, out);
        if (*zm_build) {
            const auto p = read_curve_file(zm_curve);
            ZoomHierarchy z(p, need_k(cfg), cfg.eps);
            write_index(zm_out, p, SectionType::zoom, dump(z));
            return 0;
        }
        if (*zm_q) {
            const auto z = load_section<ZoomHierarchy>(IndexFile::load(zm_index), SectionType::zoom);
            const auto r = z.query(parse_index_arg(zi), parse_index_arg(zj));
            out << "# certified: " << format_double(r.certified) << "\n";
            write_curve(out, r.curve);
            return 0;
        }
        if (*sq_build) {
            const auto p = read_curve_file(sq_curve);
            SubcurveOracle o(p, need_k(cfg), cfg.eps);
            write_index(sq_out, p, SectionType::subcurve, dump(o));
            return 0;
        }
        if (*sq_q) {
            const auto o = load_section<SubcurveOracle>(IndexFile::load(sq_index), SectionType::subcurve);
            const auto t = o.trace(parse_index_arg(si), parse_index_arg(sj), read_curve_file(sq_query));
            out << format_double(t.value) << " branch=" << (t.exact ? "exact" : "split") << "\n";
            return 0;
        }
        if (*srv) {
            const auto service = Service::from_files(srv_curve, srv_index);
            return serve(service, cfg.host, cfg.port);
        }
        if (*bench) return cmd_bench(cfg, bm, bk, bd, be, bq, out);
    } catch (const UsageError& e) {
        err << "frechet: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "frechet: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace frechet::tools

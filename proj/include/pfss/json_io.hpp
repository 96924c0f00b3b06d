/**
 * @file json_io.hpp
 * @brief JSON serialization for every externally visible object: fields,
 *        elements, matrices, systems, register specs, cycle sets, root
 *        results, and analysis reports.
 *
 * Serialization is canonical — object keys are emitted in sorted order and
 * every element uses its reduced coefficient tree — so equal objects always
 * produce byte-identical dumps.  Parsing is strict about digit ranges and
 * shapes (ParseError), but accepts a bare integer wherever an element
 * encoding is expected, as shorthand for a base-field constant.
 */
#ifndef PFSS_JSON_IO_HPP
#define PFSS_JSON_IO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pfss/analysis.hpp"
#include "pfss/factor.hpp"
#include "pfss/fsr.hpp"

namespace pfss {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Parse helpers
// ---------------------------------------------------------------------------

namespace detail {

inline const Json& require_key(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        raise(ErrorKind::ParseError, std::string("missing key \"") + key + "\"");
    return j.at(key);
}

/// Non-negative integer value of a JSON number, however it is stored.
inline std::optional<u64> as_u64(const Json& j) {
    if (j.is_number_unsigned()) return j.get<u64>();
    if (j.is_number_integer()) {
        long long v = j.get<long long>();
        if (v >= 0) return static_cast<u64>(v);
    }
    return std::nullopt;
}

inline u64 require_u64(const Json& j, const char* what) {
    std::optional<u64> v = as_u64(j);
    if (!v) raise(ErrorKind::ParseError, std::string(what) + " must be a non-negative integer");
    return *v;
}

/// Canonical coefficient tree of a flat digit slice at the given level.
inline Json flat_to_tree(const FieldCtx& ctx, u32 level, const u64* a) {
    if (level == 0) return Json(a[0]);
    const u32 block = ctx.abs_degree(level - 1);
    Json out = Json::array();
    for (u32 i = 0; i < ctx.step(level - 1).degree; ++i)
        out.push_back(flat_to_tree(ctx, level - 1, a + size_t(i) * block));
    return out;
}

/// Parse a coefficient tree (or bare-integer shorthand) into flat digits.
inline void tree_to_flat(const FieldCtx& ctx, u32 level, const Json& j, u64* out) {
    if (std::optional<u64> v = as_u64(j)) {
        if (*v >= ctx.characteristic())
            raise(ErrorKind::ParseError, "integer element encoding must be a reduced base digit");
        out[0] = *v;
        return;
    }
    if (level == 0 || !j.is_array())
        raise(ErrorKind::ParseError, "element encoding must be an integer or a coefficient array");
    const u32 degree = ctx.step(level - 1).degree;
    const u32 block = ctx.abs_degree(level - 1);
    if (j.size() > degree)
        raise(ErrorKind::ParseError, "element encoding has more coefficients than the modulus degree");
    for (size_t i = 0; i < j.size(); ++i)
        tree_to_flat(ctx, level - 1, j[i], out + i * block);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Fields and elements
// ---------------------------------------------------------------------------

inline Json field_to_json(const FieldCtxPtr& ctx) {
    Json tower = Json::array();
    for (u32 l = 0; l < ctx->levels(); ++l) {
        const TowerStep& st = ctx->step(l);
        Json mod = Json::array();
        for (u32 i = 0; i < st.degree; ++i)
            mod.push_back(detail::flat_to_tree(*ctx, l, st.lower[i].data()));
        // leading monic coefficient, in the same previous-level encoding
        std::vector<u64> one(ctx->abs_degree(l), 0);
        one[0] = 1;
        mod.push_back(detail::flat_to_tree(*ctx, l, one.data()));
        tower.push_back(std::move(mod));
    }
    return Json{{"p", ctx->characteristic()}, {"tower", std::move(tower)}};
}

inline FieldCtxPtr field_from_json(const Json& j) {
    u64 p = detail::require_u64(detail::require_key(j, "p"), "\"p\"");
    FieldCtxPtr ctx;
    try {
        ctx = FieldCtx::prime(p);
    } catch (const Error& e) {
        raise(ErrorKind::ParseError, std::string("invalid characteristic: ") + e.what());
    }
    const Json tower = j.contains("tower") ? j.at("tower") : Json::array();
    if (!tower.is_array()) raise(ErrorKind::ParseError, "\"tower\" must be an array");
    for (const Json& mod : tower) {
        if (!mod.is_array() || mod.size() < 3)
            raise(ErrorKind::ParseError, "tower modulus must have degree at least two");
        std::vector<FE> coeffs;
        for (const Json& c : mod) {
            std::vector<u64> flat(ctx->abs_degree(), 0);
            detail::tree_to_flat(*ctx, ctx->levels(), c, flat.data());
            coeffs.emplace_back(ctx, std::move(flat));
        }
        if (!coeffs.back().is_one())
            raise(ErrorKind::ParseError, "tower modulus must be monic");
        try {
            ctx = extend_field(ctx, Poly(ctx, std::move(coeffs)));
        } catch (const Error& e) {
            raise(ErrorKind::ParseError, std::string("invalid tower step: ") + e.what());
        }
    }
    return ctx;
}

inline Json element_to_json(const FE& e) {
    return detail::flat_to_tree(*e.ctx(), e.ctx()->levels(), e.flat().data());
}

inline FE element_from_json(const Json& j, const FieldCtxPtr& ctx) {
    std::vector<u64> flat(ctx->abs_degree(), 0);
    detail::tree_to_flat(*ctx, ctx->levels(), j, flat.data());
    return FE(ctx, std::move(flat));
}

// ---------------------------------------------------------------------------
// Vectors, matrices, polynomials
// ---------------------------------------------------------------------------

inline Json vector_to_json(const std::vector<FE>& v) {
    Json out = Json::array();
    for (const FE& e : v) out.push_back(element_to_json(e));
    return out;
}

inline std::vector<FE> vector_from_json(const Json& j, const FieldCtxPtr& ctx) {
    if (!j.is_array()) raise(ErrorKind::ParseError, "vector must be an array");
    std::vector<FE> out;
    for (const Json& e : j) out.push_back(element_from_json(e, ctx));
    return out;
}

inline Json matrix_to_json(const Mat& m) {
    Json out = Json::array();
    for (u32 r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (u32 c = 0; c < m.cols(); ++c) row.push_back(element_to_json(m.at(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

inline Mat matrix_from_json(const Json& j, const FieldCtxPtr& ctx) {
    if (!j.is_array() || j.empty())
        raise(ErrorKind::ParseError, "matrix must be a non-empty array of rows");
    std::vector<std::vector<FE>> grid;
    for (const Json& row : j) {
        if (!row.is_array() || row.empty())
            raise(ErrorKind::ParseError, "matrix row must be a non-empty array");
        if (row.size() != j[0].size())
            raise(ErrorKind::ParseError, "matrix rows must have equal length");
        grid.emplace_back();
        for (const Json& e : row) grid.back().push_back(element_from_json(e, ctx));
    }
    return Mat(ctx, grid);
}

inline Json poly_to_json(const Poly& f) {
    Json out = Json::array();
    for (int i = 0; i <= f.degree(); ++i) out.push_back(element_to_json(f.coeff(u32(i))));
    return out;
}

inline Poly poly_from_json(const Json& j, const FieldCtxPtr& ctx) {
    if (!j.is_array()) raise(ErrorKind::ParseError, "polynomial must be an array of coefficients");
    std::vector<FE> coeffs;
    for (const Json& e : j) coeffs.push_back(element_from_json(e, ctx));
    return Poly(ctx, std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Cycle sets and histograms
// ---------------------------------------------------------------------------

inline Json cycle_set_to_json(const CycleSet& cs) {
    Json out = Json::array();
    for (const CycleEntry& e : cs.entries) {
        if (e.count > u128(~u64(0)))
            raise(ErrorKind::BadRange, "cycle count exceeds the serializable range");
        out.push_back(Json{{"count", static_cast<u64>(e.count)}, {"length", e.length}});
    }
    return out;
}

inline CycleSet cycle_set_from_json(const Json& j) {
    if (!j.is_array()) raise(ErrorKind::ParseError, "cycle set must be an array");
    std::vector<CycleEntry> entries;
    for (const Json& e : j)
        entries.push_back({detail::require_u64(detail::require_key(e, "count"), "\"count\""),
                           detail::require_u64(detail::require_key(e, "length"), "\"length\"")});
    return detail::normalize_cycle_set(entries);
}

inline Json histogram_to_json(const std::map<u64, u128>& hist) {
    Json out = Json::array();
    for (const auto& [period, count] : hist) {
        if (count > u128(~u64(0)))
            raise(ErrorKind::BadRange, "histogram count exceeds the serializable range");
        out.push_back(Json{{"count", static_cast<u64>(count)}, {"period", period}});
    }
    return out;
}

inline std::map<u64, u128> histogram_from_json(const Json& j) {
    if (!j.is_array()) raise(ErrorKind::ParseError, "histogram must be an array");
    std::map<u64, u128> out;
    for (const Json& e : j)
        out[detail::require_u64(detail::require_key(e, "period"), "\"period\"")] =
            detail::require_u64(detail::require_key(e, "count"), "\"count\"");
    return out;
}

// ---------------------------------------------------------------------------
// Systems and register specs
// ---------------------------------------------------------------------------

inline Json system_to_json(const Pfss& sys) {
    Json mats = Json::array();
    for (const Mat& m : sys.matrices()) mats.push_back(matrix_to_json(m));
    return Json{{"schema", 1},
                {"field", field_to_json(sys.ctx())},
                {"period", sys.period()},
                {"matrices", std::move(mats)}};
}

namespace detail {

inline void require_schema(const Json& j) {
    if (require_u64(require_key(j, "schema"), "\"schema\"") != 1)
        raise(ErrorKind::ParseError, "unsupported schema version");
}

} // namespace detail

inline Pfss system_from_json(const Json& j) {
    detail::require_schema(j);
    FieldCtxPtr ctx = field_from_json(detail::require_key(j, "field"));
    const Json& mats = detail::require_key(j, "matrices");
    if (!mats.is_array() || mats.empty())
        raise(ErrorKind::ParseError, "\"matrices\" must be a non-empty array");
    u64 period = detail::require_u64(detail::require_key(j, "period"), "\"period\"");
    if (period != mats.size())
        raise(ErrorKind::ParseError, "\"period\" must equal the number of matrices");
    std::vector<Mat> ms;
    for (const Json& m : mats) ms.push_back(matrix_from_json(m, ctx));
    return Pfss(ctx, std::move(ms));
}

inline Json matrix_file_to_json(const Mat& m) {
    return Json{{"schema", 1}, {"field", field_to_json(m.ctx())}, {"matrix", matrix_to_json(m)}};
}

inline Mat matrix_file_from_json(const Json& j) {
    detail::require_schema(j);
    FieldCtxPtr ctx = field_from_json(detail::require_key(j, "field"));
    return matrix_from_json(detail::require_key(j, "matrix"), ctx);
}

inline Json pfsr_to_json(const PfsrSpec& spec) {
    Json wiring = Json::array();
    for (const Feed& f : spec.wiring) {
        if (std::holds_alternative<u32>(f))
            wiring.push_back(Json{{"master", std::get<u32>(f)}});
        else
            wiring.push_back(Json{{"const", element_to_json(std::get<FE>(f))}});
    }
    return Json{{"schema", 1},
                {"field", field_to_json(spec.master.ctx)},
                {"pfsr", Json{{"kind", spec.kind == PfsrKind::Fibonacci ? "fibonacci" : "galois"},
                              {"master", Json{{"matrix", matrix_to_json(spec.master.transition)},
                                              {"init", vector_to_json(spec.master.init)}}},
                              {"slave_dim", spec.slave_dim},
                              {"wiring", std::move(wiring)}}}};
}

inline PfsrSpec pfsr_from_json(const Json& j) {
    detail::require_schema(j);
    FieldCtxPtr ctx = field_from_json(detail::require_key(j, "field"));
    const Json& p = detail::require_key(j, "pfsr");

    const Json& kind = detail::require_key(p, "kind");
    PfsrKind k;
    if (kind == "fibonacci")
        k = PfsrKind::Fibonacci;
    else if (kind == "galois")
        k = PfsrKind::Galois;
    else
        raise(ErrorKind::ParseError, "\"kind\" must be \"fibonacci\" or \"galois\"");

    const Json& master = detail::require_key(p, "master");
    MasterLfsr m{ctx, matrix_from_json(detail::require_key(master, "matrix"), ctx),
                 vector_from_json(detail::require_key(master, "init"), ctx)};

    u64 slave_dim = detail::require_u64(detail::require_key(p, "slave_dim"), "\"slave_dim\"");
    const Json& wiring = detail::require_key(p, "wiring");
    if (!wiring.is_array()) raise(ErrorKind::ParseError, "\"wiring\" must be an array");
    std::vector<Feed> feeds;
    for (const Json& w : wiring) {
        if (w.is_object() && w.contains("master"))
            feeds.push_back(feed_master(
                static_cast<u32>(detail::require_u64(w.at("master"), "\"master\""))));
        else if (w.is_object() && w.contains("const"))
            feeds.push_back(feed_constant(element_from_json(w.at("const"), ctx)));
        else
            raise(ErrorKind::ParseError, "wiring entry must be {\"master\": i} or {\"const\": c}");
    }
    return PfsrSpec{k, std::move(m), static_cast<u32>(slave_dim), std::move(feeds)};
}

// ---------------------------------------------------------------------------
// Results and reports
// ---------------------------------------------------------------------------

inline Json root_result_to_json(const RootResult& rr) {
    switch (rr.status) {
        case RootStatus::Root:
            return Json{{"status", "root"},
                        {"reason", rr.reason},
                        {"field", field_to_json(rr.ctx)},
                        {"matrix", matrix_to_json(rr.root)}};
        case RootStatus::NoRoot: {
            Json out{{"status", "no-root"}, {"reason", rr.reason}};
            if (rr.certificate) {
                out["certificate"] =
                    Json{{"characteristic", poly_to_json(rr.certificate->characteristic)},
                         {"minimal", poly_to_json(rr.certificate->minimal)},
                         {"p", rr.certificate->p},
                         {"n", rr.certificate->n_value},
                         {"max_block", rr.certificate->max_block}};
            }
            return out;
        }
        case RootStatus::Undetermined: break;
    }
    return Json{{"status", "undetermined"}, {"reason", rr.reason}};
}

inline RootResult root_result_from_json(const Json& j, const FieldCtxPtr& base_ctx) {
    RootResult rr;
    const Json& status = detail::require_key(j, "status");
    rr.reason = detail::require_key(j, "reason").get<std::string>();
    if (status == "root") {
        rr.status = RootStatus::Root;
        rr.ctx = field_from_json(detail::require_key(j, "field"));
        rr.root = matrix_from_json(detail::require_key(j, "matrix"), rr.ctx);
    } else if (status == "no-root") {
        rr.status = RootStatus::NoRoot;
        if (j.contains("certificate")) {
            const Json& c = j.at("certificate");
            rr.certificate = NoRootCertificate{
                poly_from_json(detail::require_key(c, "characteristic"), base_ctx),
                poly_from_json(detail::require_key(c, "minimal"), base_ctx),
                detail::require_u64(detail::require_key(c, "p"), "\"p\""),
                detail::require_u64(detail::require_key(c, "n"), "\"n\""),
                static_cast<u32>(
                    detail::require_u64(detail::require_key(c, "max_block"), "\"max_block\""))};
        }
    } else if (status == "undetermined") {
        rr.status = RootStatus::Undetermined;
    } else {
        raise(ErrorKind::ParseError, "unknown root status");
    }
    return rr;
}

inline Json floquet_to_json(const FloquetData& fd) {
    Json transforms = Json::array();
    for (const Mat& P : fd.P) transforms.push_back(matrix_to_json(P));
    return Json{{"field", field_to_json(fd.ctx)},
                {"a_tilde", matrix_to_json(fd.A_tilde)},
                {"transforms", std::move(transforms)}};
}

inline FloquetData floquet_from_json(const Json& j) {
    FloquetData fd;
    fd.ctx = field_from_json(detail::require_key(j, "field"));
    fd.A_tilde = matrix_from_json(detail::require_key(j, "a_tilde"), fd.ctx);
    const Json& transforms = detail::require_key(j, "transforms");
    if (!transforms.is_array()) raise(ErrorKind::ParseError, "\"transforms\" must be an array");
    for (const Json& P : transforms) fd.P.push_back(matrix_from_json(P, fd.ctx));
    return fd;
}

inline Json theorem_to_json(const TheoremCheck& t) {
    return Json{{"pass", t.pass}, {"violated", t.violated}, {"witness", vector_to_json(t.witness)}};
}

inline TheoremCheck theorem_from_json(const Json& j, const FieldCtxPtr& ctx) {
    TheoremCheck t;
    const Json& pass = detail::require_key(j, "pass");
    if (!pass.is_boolean()) raise(ErrorKind::ParseError, "\"pass\" must be a boolean");
    t.pass = pass.get<bool>();
    t.violated = detail::require_key(j, "violated").get<std::string>();
    t.witness = vector_from_json(detail::require_key(j, "witness"), ctx);
    return t;
}

inline Json analysis_report_to_json(const AnalysisReport& rep) {
    Json basis = Json::array();
    for (const auto& v : rep.subspace_basis) basis.push_back(vector_to_json(v));
    Json out{{"schema", 1},
             {"field", field_to_json(rep.monodromy.ctx())},
             {"nonsingular", rep.nonsingular},
             {"monodromy", matrix_to_json(rep.monodromy)},
             {"subspace_basis", std::move(basis)},
             {"van_dooren", rep.van_dooren}};
    if (rep.root) out["root"] = root_result_to_json(*rep.root);
    if (rep.floquet) out["floquet"] = floquet_to_json(*rep.floquet);
    if (rep.shift_cycles) out["shift_cycles"] = cycle_set_to_json(*rep.shift_cycles);
    if (rep.histogram) out["histogram"] = histogram_to_json(*rep.histogram);
    if (rep.closed_orbits) out["closed_orbits"] = cycle_set_to_json(*rep.closed_orbits);
    if (rep.theorem) out["theorem"] = theorem_to_json(*rep.theorem);
    return out;
}

inline AnalysisReport analysis_report_from_json(const Json& j) {
    detail::require_schema(j);
    FieldCtxPtr ctx = field_from_json(detail::require_key(j, "field"));
    AnalysisReport rep;
    const Json& nonsingular = detail::require_key(j, "nonsingular");
    if (!nonsingular.is_boolean()) raise(ErrorKind::ParseError, "\"nonsingular\" must be a boolean");
    rep.nonsingular = nonsingular.get<bool>();
    rep.monodromy = matrix_from_json(detail::require_key(j, "monodromy"), ctx);
    for (const Json& v : detail::require_key(j, "subspace_basis"))
        rep.subspace_basis.push_back(vector_from_json(v, ctx));
    const Json& vd = detail::require_key(j, "van_dooren");
    if (!vd.is_boolean()) raise(ErrorKind::ParseError, "\"van_dooren\" must be a boolean");
    rep.van_dooren = vd.get<bool>();
    if (j.contains("root")) rep.root = root_result_from_json(j.at("root"), ctx);
    if (j.contains("floquet")) rep.floquet = floquet_from_json(j.at("floquet"));
    if (j.contains("shift_cycles")) rep.shift_cycles = cycle_set_from_json(j.at("shift_cycles"));
    if (j.contains("histogram")) rep.histogram = histogram_from_json(j.at("histogram"));
    if (j.contains("closed_orbits")) rep.closed_orbits = cycle_set_from_json(j.at("closed_orbits"));
    if (j.contains("theorem")) rep.theorem = theorem_from_json(j.at("theorem"), ctx);
    return rep;
}

// ---------------------------------------------------------------------------
// Errors and top-level parsing
// ---------------------------------------------------------------------------

/// Machine-readable error document: {"error": {"kind": ..., "message": ...}}.
inline Json error_to_json(const Error& e) {
    std::string message = e.what();
    const std::string prefix = std::string(error_kind_name(e.kind())) + ": ";
    if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
    return Json{{"error", Json{{"kind", std::string(error_kind_name(e.kind()))},
                               {"message", std::move(message)}}}};
}

/// Parse a JSON document, mapping syntax errors to ParseError with position.
inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        raise(ErrorKind::ParseError, e.what());
    }
}

} // namespace pfss

#endif // PFSS_JSON_IO_HPP

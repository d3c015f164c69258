#include "marsem/json_io.hpp"
#include "marsem/errors.hpp"

namespace marsem {

namespace {

Int int_from_json(const Json& j, const char* what) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return int_from_string(j.get<std::string>());
    throw input_error(std::string("expected an integer or integer string for ") + what);
}

std::vector<int> int_list(const Json& j, const char* what) {
    if (!j.is_array()) throw input_error(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer())
            throw input_error(std::string(what) + " entries must be integers");
        out.push_back(v.get<int>());
    }
    return out;
}

Json face_json(const Face& f) {
    Json out = Json::array();
    for (Vertex v : f) out.push_back(v);
    return out;
}

Json index_json(const CellIndex& idx) {
    Json out = Json::array();
    for (int level : idx) out.push_back(level);
    return out;
}

} // namespace

SpacePtr load_model(const Json& j) {
    if (!j.is_object()) throw input_error("model must be a JSON object");
    if (!j.contains("ground") || !j.contains("facets") || !j.contains("shape"))
        throw input_error("model needs ground, facets and shape");
    std::vector<Vertex> ground = int_list(j.at("ground"), "ground");
    std::vector<Face> facets;
    if (!j.at("facets").is_array()) throw input_error("facets must be an array");
    for (const auto& f : j.at("facets")) facets.push_back(int_list(f, "facet"));
    SimplicialComplex complex = build_complex(facets, ground);
    TableShape shape = validated_shape(int_list(j.at("shape"), "shape"), ground.size());
    return make_space(std::move(complex), std::move(shape));
}

Json model_json(const MarginalSpace& space) {
    Json out;
    out["ground"] = face_json(space.complex().ground());
    Json facets = Json::array();
    for (const Face& f : space.complex().facets())
        if (!f.empty()) facets.push_back(face_json(f));
    out["facets"] = facets;
    out["shape"] = space.shape().sizes;
    return out;
}

Table load_table(const Json& j) {
    if (!j.is_object() || !j.contains("shape") || !j.contains("cells"))
        throw input_error("table needs shape and cells");
    TableShape shape{int_list(j.at("shape"), "shape")};
    for (int r : shape.sizes)
        if (r < 1) throw input_error("shape entries must be >= 1");
    Table out(shape);
    if (!j.at("cells").is_array()) throw input_error("cells must be an array");
    for (const auto& cell : j.at("cells")) {
        if (!cell.is_object() || !cell.contains("index") || !cell.contains("count"))
            throw input_error("each cell needs index and count");
        CellIndex idx = int_list(cell.at("index"), "cell index");
        Int count = int_from_json(cell.at("count"), "count");
        if (count < 0) throw input_error("table counts must be nonnegative");
        out.add(idx, count);
    }
    return out;
}

Json table_json(const Table& u) {
    Json out;
    out["shape"] = u.shape().sizes;
    Json cells = Json::array();
    for (const auto& [cell, count] : u.counts()) {
        Json c;
        c["index"] = index_json(cell);
        c["count"] = to_string(count);
        cells.push_back(c);
    }
    out["cells"] = cells;
    return out;
}

Graph load_graph_text_or_json(const std::string& content) {
    std::size_t first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') {
        Json j = Json::parse(content, nullptr, true, true);
        SpacePtr sp = load_model(j);
        return Graph::from_complex(sp->complex());
    }
    return Graph::parse_text(content);
}

namespace {

Json coords_json(const MarginalSpace& sp, const std::vector<Rat>& coords, bool reduced) {
    Json out = Json::array();
    for (std::size_t id = 0; id < sp.face_count(); ++id) {
        std::size_t block = reduced ? sp.reduced_block(id) : sp.full_block(id);
        for (std::size_t r = 0; r < block; ++r) {
            Json c;
            c["face"] = face_json(sp.face(id));
            c["index"] = index_json(reduced ? sp.reduced_unrank(id, r) : sp.full_unrank(id, r));
            c["value"] = to_string(coords[(reduced ? sp.reduced_offset(id) : sp.full_offset(id)) + r]);
            out.push_back(c);
        }
    }
    return out;
}

} // namespace

Json full_vector_json(const FullMarginalVector& v) {
    Json out;
    out["kind"] = "full";
    out["coords"] = coords_json(*v.space(), v.coords(), false);
    return out;
}

Json reduced_vector_json(const ReducedMarginalVector& v) {
    Json out;
    out["kind"] = "reduced";
    out["coords"] = coords_json(*v.space(), v.coords(), true);
    return out;
}

Json inequality_json(const MarginalSpace& space, const LinearInequality& row) {
    Json coeffs = Json::array();
    for (std::size_t id = 0; id < space.face_count(); ++id) {
        for (std::size_t r = 0; r < space.reduced_block(id); ++r) {
            const Int& c = row.coeffs[space.reduced_offset(id) + r];
            if (c == 0) continue;
            Json term;
            term["face"] = face_json(space.face(id));
            term["index"] = index_json(space.reduced_unrank(id, r));
            term["c"] = to_string(c);
            coeffs.push_back(term);
        }
    }
    Json out;
    out["coeffs"] = coeffs;
    return out;
}

Json system_json(const InequalitySystem& sys) {
    Json out = Json::array();
    for (const auto& row : sys.rows) out.push_back(inequality_json(*sys.space, row));
    return out;
}

Json hole_json(const HoleReport& h) {
    Json out;
    out["point"] = reduced_vector_json(h.point);
    out["level"] = to_string(h.level);
    Json weights = Json::array();
    for (const Rat& w : h.cone_weights) weights.push_back(to_string(w));
    out["cone_weights"] = weights;
    out["search"] = Json{{"cell_bound", to_string(h.semigroup_search.cell_bound)},
                         {"nodes", h.semigroup_search.nodes}};
    return out;
}

Json facepopper_json(const FacepopperReport& rep) {
    Json out;
    out["verdict"] = to_string(rep.verdict);
    out["reason"] = rep.reason;
    if (!rep.face.empty()) out["face"] = face_json(rep.face);
    Json rows = Json::array();
    for (const auto& row : rep.B) {
        Json r = Json::array();
        for (const Int& v : row) r.push_back(to_string(v));
        rows.push_back(r);
    }
    out["B"] = rows;
    out["beta"] = rep.beta;
    out["tested"] = rep.tested;
    if (!rep.witness_b.empty()) {
        Json w = Json::array();
        for (const Int& v : rep.witness_b) w.push_back(to_string(v));
        out["witness_b"] = w;
    }
    return out;
}

Json minor_op_json(const MinorOp& op) {
    Json out;
    if (const auto* dv = std::get_if<DeleteVertex>(&op)) {
        out["op"] = "delete_vertex";
        out["vertex"] = dv->v;
    } else if (const auto* ce = std::get_if<ContractEdge>(&op)) {
        out["op"] = "contract_edge";
        out["face"] = face_json(ce->L);
        out["new_label"] = ce->new_label;
    } else {
        out["op"] = "delete_face";
        out["face"] = face_json(std::get<DeleteEdge>(op).e);
    }
    return out;
}

Json decomposition_json(const Decomposition& d) {
    Json out;
    out["ground"] = face_json(d.complex.ground());
    Json facets = Json::array();
    for (const Face& f : d.complex.facets())
        if (!f.empty()) facets.push_back(face_json(f));
    out["facets"] = facets;
    if (!d.is_leaf()) {
        out["separator"] = face_json(*d.separator);
        out["left"] = decomposition_json(*d.left);
        out["right"] = decomposition_json(*d.right);
    }
    return out;
}

Json certificate_json(const NormalityCertificate& cert) {
    Json out;
    out["verdict"] = cert.verdict == NormalityCertificate::Verdict::Normal ? "normal"
                     : cert.verdict == NormalityCertificate::Verdict::NotNormal
                         ? "not_normal"
                         : "unknown";
    if (cert.normal) {
        Json n;
        n["elimination_order"] = face_json(cert.normal->elimination.order);
        Json fills = Json::array();
        for (const Edge& e : cert.normal->elimination.fill_edges)
            fills.push_back(Json::array({e.first, e.second}));
        n["fill_edges"] = fills;
        Json comp;
        comp["vertices"] = face_json(cert.normal->completion.vertices());
        Json edges = Json::array();
        for (const Edge& e : cert.normal->completion.edges())
            edges.push_back(Json::array({e.first, e.second}));
        comp["edges"] = edges;
        n["completion"] = comp;
        n["decomposition"] = decomposition_json(cert.normal->tree);
        Json dels = Json::array();
        for (const EdgeDeletionStep& step : cert.normal->deletions) {
            Json d;
            d["edge"] = Json::array({step.edge.first, step.edge.second});
            d["system_rows"] = step.system_rows;
            d["facepopper"] = facepopper_json(step.report);
            dels.push_back(d);
        }
        n["deletions"] = dels;
        out["normal"] = n;
    }
    if (cert.not_normal) {
        Json n;
        Json bs = Json::array();
        for (const auto& part : cert.not_normal->branch_sets) bs.push_back(face_json(part));
        n["branch_sets"] = bs;
        Json ops = Json::array();
        for (const MinorOp& op : cert.not_normal->ops) ops.push_back(minor_op_json(op));
        n["minor_ops"] = ops;
        n["hole"] = hole_json(cert.not_normal->hole);
        out["not_normal"] = n;
    }
    if (cert.verdict == NormalityCertificate::Verdict::Unknown)
        out["unknown"] = Json{{"bound", to_string(cert.searched_bound)}};
    return out;
}

} // namespace marsem

#include "glstab/json_io.hpp"

#include <sstream>

namespace glstab {

namespace {

FieldSpec field_of(const Json& j, const std::optional<FieldSpec>& fallback) {
    if (j.contains("field")) return FieldSpec::parse(j.at("field").get<std::string>());
    if (fallback) return *fallback;
    throw ParseError("document lacks a \"field\" key");
}

Scalar scalar_from_json(const Json& j, const FieldSpec& f) {
    if (j.is_number_integer()) return Scalar::from_int(f, j.get<long>());
    if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
    throw ParseError("scalar entries must be integers or strings");
}

} // namespace

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return Json{{"field", m.field().str()}, {"rows", rows}};
}

Matrix matrix_from_json(const Json& j, const std::optional<FieldSpec>& fallback_field) {
    FieldSpec f = field_of(j, fallback_field);
    const Json& rows = j.at("rows");
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows.at(0).size());
    Matrix m(f, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows.at(static_cast<std::size_t>(i)).size()) != c)
            throw ParseError("ragged matrix rows");
        for (int k = 0; k < c; ++k)
            m.at(i, k) = scalar_from_json(rows.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)), f);
    }
    return m;
}

Json to_json(const Polynomial& p) {
    Json coeffs = Json::array();
    for (int k = 0; k <= p.degree(); ++k) coeffs.push_back(p.coeff(k).str());
    return Json{{"field", p.field().str()}, {"coeffs", coeffs}};
}

Polynomial polynomial_from_json(const Json& j, const std::optional<FieldSpec>& fallback_field) {
    FieldSpec f = field_of(j, fallback_field);
    std::vector<Scalar> cs;
    for (const auto& c : j.at("coeffs")) cs.push_back(scalar_from_json(c, f));
    return Polynomial(f, std::move(cs));
}

Json to_json(const NonSingularityCertificate& c) {
    switch (c.kind) {
        case NonSingularityCertificate::Kind::FiniteFieldExhaustive:
            return Json{{"kind", "finite-field-exhaustive"}, {"count", c.count}};
        case NonSingularityCertificate::Kind::IrreduciblePolynomial:
            return Json{{"kind", "irreducible-polynomial"}, {"poly", to_json(*c.poly)}};
        case NonSingularityCertificate::Kind::PositiveDefiniteForm:
            return Json{{"kind", "positive-definite-form"}, {"power", c.power}};
        case NonSingularityCertificate::Kind::None:
            return Json{{"kind", "none"}};
    }
    return Json{{"kind", "none"}};
}

NonSingularityCertificate certificate_from_json(const Json& j, const FieldSpec& f) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "finite-field-exhaustive")
        return NonSingularityCertificate::exhaustive(j.at("count").get<std::uint64_t>());
    if (kind == "irreducible-polynomial")
        return NonSingularityCertificate::irreducible(polynomial_from_json(j.at("poly"), f));
    if (kind == "positive-definite-form")
        return NonSingularityCertificate::positive_definite(j.at("power").get<int>());
    if (kind == "none") return NonSingularityCertificate::none();
    throw ParseError("unknown certificate kind: " + kind);
}

Json to_json(const MatrixSubspace& v) {
    Json basis = Json::array();
    for (const auto& b : v.basis()) basis.push_back(to_json(b));
    Json j{{"field", v.field().str()}, {"n", v.side()}, {"basis", basis}};
    if (v.certificate) j["certificate"] = to_json(*v.certificate);
    return j;
}

MatrixSubspace subspace_from_json(const Json& j) {
    FieldSpec f = field_of(j, std::nullopt);
    int n = j.at("n").get<int>();
    std::vector<Matrix> basis;
    for (const auto& b : j.at("basis")) basis.push_back(matrix_from_json(b, f));
    MatrixSubspace v(f, n, std::move(basis));
    if (j.contains("certificate")) v.certificate = certificate_from_json(j.at("certificate"), f);
    return v;
}

Json to_json(const MatEndo& f) {
    Json op = Json::array();
    for (int i = 0; i < f.op().rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < f.op().cols(); ++j) row.push_back(f.op().at(i, j).str());
        op.push_back(std::move(row));
    }
    return Json{{"field", f.field().str()}, {"n", f.side()}, {"vec", kVecConvention}, {"op", op}};
}

MatEndo endo_from_json(const Json& j, const std::optional<FieldSpec>& fallback_field) {
    FieldSpec f = field_of(j, fallback_field);
    int n = j.contains("n") ? j.at("n").get<int>() : 0;
    if (j.contains("vec") && j.at("vec").get<std::string>() != kVecConvention)
        throw ParseError("unsupported vectorization convention");
    if (j.contains("op")) {
        Json m{{"field", f.str()}, {"rows", j.at("op")}};
        Matrix op = matrix_from_json(m);
        if (n == 0) {
            while (n * n < op.rows()) ++n;
        }
        return MatEndo(f, n, op);
    }
    if (j.contains("images")) {
        std::vector<Matrix> images;
        for (const auto& im : j.at("images")) images.push_back(matrix_from_json(im, f));
        if (n == 0 && !images.empty()) n = images[0].rows();
        return MatEndo::from_images(f, n, images);
    }
    throw ParseError("endomorphism document needs \"op\" or \"images\"");
}

Json to_json(const DivisionAlgebraSpec& a) {
    Json c = Json::array();
    for (int i = 0; i < a.n; ++i) {
        Json ci = Json::array();
        for (int j = 0; j < a.n; ++j) {
            Json cij = Json::array();
            for (int k = 0; k < a.n; ++k) cij.push_back(a.at(i, j, k).str());
            ci.push_back(std::move(cij));
        }
        c.push_back(std::move(ci));
    }
    Json j{{"field", a.field.str()}, {"n", a.n}, {"c", c}};
    if (a.certificate) j["certificate"] = to_json(*a.certificate);
    return j;
}

DivisionAlgebraSpec algebra_from_json(const Json& j) {
    FieldSpec f = field_of(j, std::nullopt);
    int n = j.at("n").get<int>();
    DivisionAlgebraSpec a(f, n);
    const Json& c = j.at("c");
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj)
            for (int k = 0; k < n; ++k)
                a.at(i, jj, k) = scalar_from_json(
                    c.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(jj)).at(static_cast<std::size_t>(k)), f);
    if (j.contains("certificate")) a.certificate = certificate_from_json(j.at("certificate"), f);
    return a;
}

Json to_json(const PreservationVerdict& v) {
    Json j;
    switch (v.tag) {
        case PreservationVerdict::Tag::ExhaustivePass:
            j["verdict"] = "exhaustive-pass";
            j["count"] = v.count;
            break;
        case PreservationVerdict::Tag::SampledPass:
            j["verdict"] = "sampled-pass";
            j["samples"] = v.count;
            break;
        case PreservationVerdict::Tag::Refuted:
            j["verdict"] = "refuted";
            if (v.witness) j["witness"] = to_json(*v.witness);
            break;
    }
    return j;
}

Json to_json(const NonsingVerdict& v) {
    Json j;
    switch (v.tag) {
        case NonsingTag::Verified:
            j["verdict"] = "verified";
            j["certificate"] = to_json(v.cert);
            break;
        case NonsingTag::Refuted:
            j["verdict"] = "refuted";
            if (v.witness) j["witness"] = to_json(*v.witness);
            break;
        case NonsingTag::Unknown:
            j["verdict"] = "unknown";
            j["samples_tested"] = v.samples_tested;
            break;
    }
    return j;
}

Json to_json(const SingularVerdict& v) {
    Json j{{"verdict", v.singular ? "singular" : "contains-invertible"}};
    if (v.witness) j["witness"] = to_json(*v.witness);
    return j;
}

Json to_json(const DivisionVerdict& v) {
    Json j;
    switch (v.tag) {
        case DivisionVerdict::Tag::Division:
            j["verdict"] = "division";
            j["certificate"] = to_json(v.cert);
            break;
        case DivisionVerdict::Tag::NotDivision:
            j["verdict"] = "not-division";
            if (v.witness_a) j["witness_a"] = to_json(*v.witness_a);
            if (v.witness_y) j["witness_y"] = to_json(*v.witness_y);
            break;
        case DivisionVerdict::Tag::Unknown:
            j["verdict"] = "unknown";
            j["samples_tested"] = v.samples_tested;
            break;
    }
    return j;
}

Json to_json(const MaximalSingularType& t) {
    return Json{{"type", t.tag == MaximalSingularType::Tag::KernelType ? "kernel-type" : "image-type"},
                {"vector", to_json(t.vector)}};
}

Json to_json(const PreserverClassification& c) {
    Json j{{"tag", PreserverClassification::tag_name(c.tag)}};
    if (c.P) j["P"] = to_json(*c.P);
    if (c.Q) j["Q"] = to_json(*c.Q);
    if (c.X) j["X"] = to_json(*c.X);
    if (c.A) j["A"] = to_json(*c.A);
    if (c.V) j["V"] = to_json(*c.V);
    if (c.vstatus) j["vstatus"] = to_json(*c.vstatus);
    if (c.pinch_twisted) j["twisted"] = *c.pinch_twisted;
    if (c.witness) j["witness"] = to_json(*c.witness);
    if (c.preservation) j["preservation"] = to_json(*c.preservation);
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

Json to_json(const EnumerationReport& r) {
    return Json{{"version", 1},
                {"kind", "enumeration-report"},
                {"field", r.field},
                {"n", r.n},
                {"engine", r.engine},
                {"seed", r.seed},
                {"total_maps", r.total_maps},
                {"scanned_from", r.scanned_from},
                {"scanned_to", r.scanned_to},
                {"preserver_count", r.preserver_count},
                {"bijective_count", r.bijective_count},
                {"singular_count", r.singular_count},
                {"class_histogram", r.class_histogram},
                {"frobenius_expected", r.frobenius_expected},
                {"pinch_expected", r.pinch_expected},
                {"preservers", r.preservers},
                {"anomalies", r.anomalies},
                {"wall_time", r.wall_time},
                {"partitions", r.partitions},
                {"complete", r.complete}};
}

Json to_json(const Theorem1Report& r) {
    return Json{{"version", 1},
                {"kind", "theorem1-report"},
                {"field", r.field},
                {"n", r.n},
                {"seed", r.seed},
                {"maps_checked", r.maps_checked},
                {"onto_count", r.onto_count},
                {"preimage_count", r.preimage_count},
                {"bijective_preservers", r.bijective_preservers},
                {"sets_match", r.sets_match},
                {"proof_device_ok", r.proof_device_ok},
                {"sampled", r.sampled},
                {"anomalies", r.anomalies},
                {"wall_time", r.wall_time}};
}

Json to_json(const DieudonneReport& r) {
    Json per_dim = Json::object();
    for (const auto& [d, c] : r.total_per_dim) {
        auto it = r.singular_per_dim.find(d);
        per_dim[std::to_string(d)] =
            Json{{"total", c}, {"singular", it == r.singular_per_dim.end() ? 0 : it->second}};
    }
    return Json{{"version", 1},
                {"kind", "dieudonne-report"},
                {"field", r.field},
                {"n", r.n},
                {"seed", r.seed},
                {"full_enumeration", r.full_enumeration},
                {"subspaces_seen", r.subspaces_seen},
                {"per_dimension", per_dim},
                {"max_singular_dim", r.max_singular_dim},
                {"kernel_type", r.kernel_type},
                {"image_type", r.image_type},
                {"anomalies", r.anomalies},
                {"wall_time", r.wall_time}};
}

Json to_json(const OntoAuditReport& r) {
    return Json{{"version", 1},
                {"kind", "onto-audit-report"},
                {"field", r.field},
                {"n", r.n},
                {"preservers", r.preservers},
                {"checks", r.checks},
                {"all_onto", r.all_onto},
                {"anomalies", r.anomalies}};
}

Json to_json(const SpanAuditReport& r) {
    return Json{{"version", 1}, {"kind", "span-audit-report"}, {"cases", r.cases}, {"all_ok", r.all_ok}};
}

std::string render_report(const Json& j) {
    std::ostringstream out;
    std::string kind = j.value("kind", "");
    auto anomalies = [&]() {
        auto a = j.value("anomalies", Json::array());
        if (a.empty()) {
            out << "anomalies: none\n";
        } else {
            out << "anomalies (" << a.size() << "):\n";
            for (const auto& s : a) out << "  - " << s.get<std::string>() << "\n";
        }
    };
    if (kind == "enumeration-report") {
        out << "enumeration over " << j.at("field").get<std::string>() << ", n=" << j.at("n")
            << " [" << j.at("engine").get<std::string>() << ", seed " << j.at("seed") << "]\n";
        out << "maps: " << j.at("total_maps") << "  scanned: [" << j.at("scanned_from") << ", "
            << j.at("scanned_to") << ")\n";
        out << "preservers: " << j.at("preserver_count") << " (" << j.at("bijective_count")
            << " bijective + " << j.at("singular_count") << " singular)\n";
        out << "expected: " << j.at("frobenius_expected") << " Frobenius + "
            << j.at("pinch_expected") << " pinch\n";
        out << "histogram:";
        for (const auto& [k, v] : j.at("class_histogram").items()) out << " " << k << "=" << v;
        out << "\n";
        anomalies();
        out << "wall time: " << j.at("wall_time").get<double>() << " s over " << j.at("partitions")
            << " partitions" << (j.at("complete").get<bool>() ? "" : " (INCOMPLETE)") << "\n";
    } else if (kind == "theorem1-report") {
        out << "onto / preimage set check over " << j.at("field").get<std::string>()
            << ", n=" << j.at("n") << (j.at("sampled").get<bool>() ? " (sampled)" : "") << "\n";
        out << "maps checked: " << j.at("maps_checked") << "\n";
        out << "f(GL)=GL count: " << j.at("onto_count") << ", f^{-1}(GL)=GL count: "
            << j.at("preimage_count") << ", Frobenius group size: "
            << j.at("bijective_preservers") << "\n";
        out << "sets match: " << (j.at("sets_match").get<bool>() ? "yes" : "NO") << ", proof device: "
            << (j.at("proof_device_ok").get<bool>() ? "ok" : "FAILED") << "\n";
        anomalies();
    } else if (kind == "dieudonne-report") {
        out << "singular-subspace audit over " << j.at("field").get<std::string>()
            << ", n=" << j.at("n")
            << (j.at("full_enumeration").get<bool>() ? " (full lattice)" : " (sampled)") << "\n";
        out << "subspaces seen: " << j.at("subspaces_seen") << "\n";
        for (const auto& [d, v] : j.at("per_dimension").items())
            out << "  dim " << d << ": " << v.at("total") << " total, " << v.at("singular")
                << " singular\n";
        out << "max singular dim: " << j.at("max_singular_dim") << "; maximal split: "
            << j.at("kernel_type") << " kernel-type + " << j.at("image_type") << " image-type\n";
        anomalies();
    } else if (kind == "onto-audit-report") {
        out << "onto-column audit over " << j.at("field").get<std::string>() << ", n=" << j.at("n")
            << "\n";
        out << j.at("preservers") << " preservers, " << j.at("checks") << " checks, all onto: "
            << (j.at("all_onto").get<bool>() ? "yes" : "NO") << "\n";
        anomalies();
    } else if (kind == "span-audit-report") {
        out << "GL span audit\n";
        for (const auto& c : j.at("cases")) out << "  " << c.get<std::string>() << "\n";
        out << "all ok: " << (j.at("all_ok").get<bool>() ? "yes" : "NO") << "\n";
    } else {
        out << j.dump(2) << "\n";
    }
    return out.str();
}

} // namespace glstab

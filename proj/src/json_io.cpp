#include "ginv/json_io.hpp"

#include <fstream>

namespace ginv {

namespace {

std::vector<double> require_numbers(const Json& j, const char* key, std::size_t n) {
    if (!j.contains(key)) {
        throw ParseError(std::string("matrix json: missing \"") + key + "\" array");
    }
    const Json& arr = j.at(key);
    if (!arr.is_array()) {
        throw ParseError(std::string("matrix json: \"") + key + "\" must be an array");
    }
    if (arr.size() != n) {
        throw ParseError(std::string("matrix json: \"") + key + "\" must hold rows*cols numbers");
    }
    std::vector<double> out;
    out.reserve(n);
    for (const Json& v : arr) {
        if (!v.is_number()) {
            throw ParseError(std::string("matrix json: \"") + key + "\" entries must be numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

Json identity_list(const std::vector<IdentityCheck>& checks, double tol) {
    Json arr = Json::array();
    for (const IdentityCheck& ic : checks) {
        Json e;
        e["name"] = ic.name;
        e["residual"] = ic.residual;
        e["within_tolerance"] = ic.residual <= tol;
        arr.push_back(std::move(e));
    }
    return arr;
}

Json residual_object(const std::vector<std::pair<std::string, double>>& residuals) {
    Json obj = Json::object();
    for (const auto& nv : residuals) obj[nv.first] = nv.second;
    return obj;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            re.push_back(m(i, k).real());
            im.push_back(m(i, k).imag());
        }
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("matrix json: document must be an object");
    if (!j.contains("rows") || !j.contains("cols")) {
        throw ParseError("matrix json: missing \"rows\" or \"cols\"");
    }
    const Json& jr = j.at("rows");
    const Json& jc = j.at("cols");
    if (!jr.is_number_integer() || !jc.is_number_integer()) {
        throw ParseError("matrix json: \"rows\" and \"cols\" must be integers");
    }
    const auto rows = jr.get<std::int64_t>();
    const auto cols = jc.get<std::int64_t>();
    if (rows < 0 || cols < 0 || rows > 4096 || cols > 4096) {
        throw ParseError("matrix json: dimensions must lie in 0..4096");
    }
    const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    const std::vector<double> re = require_numbers(j, "re", n);
    std::vector<double> im(n, 0.0);
    if (j.contains("im")) im = require_numbers(j, "im", n);
    Matrix m(rows, cols);
    std::size_t p = 0;
    for (std::int64_t i = 0; i < rows; ++i) {
        for (std::int64_t k = 0; k < cols; ++k, ++p) m(i, k) = Complex(re[p], im[p]);
    }
    return m;
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid json in " + path + ": " + e.what());
    }
    return matrix_from_json(j);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << dump_json(j);
    if (!out) throw Error("write failed: " + path);
}

Json to_json(const InnerInverse& x) {
    Json j;
    j["matrix"] = matrix_to_json(x.value);
    j["provenance"] = provenance_name(x.provenance);
    j["residual"] = x.residual;
    return j;
}

Json to_json(const CoreNilpotentDecomposition& dec) {
    Json j;
    j["index"] = dec.k;
    j["Q"] = matrix_to_json(dec.Q);
    j["Qinv"] = matrix_to_json(dec.Qinv);
    j["T1"] = matrix_to_json(dec.T1);
    j["T2"] = matrix_to_json(dec.T2);
    j["P"] = matrix_to_json(dec.P);
    j["core"] = matrix_to_json(dec.core);
    j["quasinilpotent_part"] = matrix_to_json(dec.quasinilpotent_part);
    return j;
}

Json to_json(const ClosedRangeDecomposition& crd) {
    Json j;
    j["U"] = matrix_to_json(crd.U);
    j["W"] = matrix_to_json(crd.W);
    j["A1"] = matrix_to_json(crd.A1);
    j["A2"] = matrix_to_json(crd.A2);
    j["D"] = matrix_to_json(crd.D);
    return j;
}

Json to_json(const PreorderReport& rep) {
    Json j;
    j["relation"] = relation_name(rep.relation);
    j["holds"] = rep.holds;
    j["consistent"] = rep.consistent;
    j["tolerance"] = rep.tolerance;
    j["identities"] = identity_list(rep.identities, rep.tolerance);
    j["equivalents"] = identity_list(rep.equivalents, rep.tolerance);
    j["notes"] = rep.notes;
    return j;
}

Json to_json(const PoMembershipReport& rep) {
    Json j;
    j["member"] = rep.member;
    j["drazin_norm"] = rep.drazin_norm;
    j["norm_ok"] = rep.norm_ok;
    j["sequence_vanishes"] = rep.sequence_vanishes;
    j["overflow"] = rep.overflow;
    j["final_term"] = rep.final_term;
    j["sequence"] = rep.sequence;
    j["note"] = rep.note;
    return j;
}

Json to_json(const verify::TheoremCheckReport& rep) {
    Json j;
    j["id"] = rep.theorem_id;
    j["passed"] = rep.passed;
    j["residuals"] = residual_object(rep.residuals);
    j["fingerprint"] = rep.fingerprint;
    j["notes"] = rep.notes;
    return j;
}

Json to_json(const verify::FuzzReport& rep) {
    Json j;
    j["passed"] = rep.passed;
    j["master_seed"] = rep.master_seed;
    j["count"] = rep.count;
    Json checks = Json::array();
    for (const verify::FuzzTheoremSummary& sum : rep.checks) {
        Json e;
        e["id"] = sum.id;
        e["passed"] = sum.passed;
        e["seed"] = sum.seed;
        e["instances"] = sum.instances;
        e["failures"] = sum.failures;
        Json res = Json::object();
        if (!sum.max_residual_name.empty()) res[sum.max_residual_name] = sum.max_residual;
        e["residuals"] = std::move(res);
        Json fails = Json::array();
        for (const verify::TheoremCheckReport& fr : sum.failure_reports) {
            fails.push_back(to_json(fr));
        }
        e["failure_reports"] = std::move(fails);
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    return j;
}

}  // namespace ginv

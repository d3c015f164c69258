#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <string>

// End-to-end checks of the command-line tool: exit codes, schema-valid JSON,
// byte-identical reruns.

using Json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(MARSEM_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

Json load_schema(const std::string& name) {
    std::ifstream in(std::string(SCHEMA_DIR) + "/" + name);
    REQUIRE(in.good());
    Json j;
    in >> j;
    return j;
}

// Validator for the schema subset the shipped schemas use: type, properties,
// required, items, enum, pattern, additionalProperties(false).
std::string validate(const Json& value, const Json& schema, const std::string& where) {
    if (schema.contains("type")) {
        const std::string t = schema.at("type").get<std::string>();
        bool ok = (t == "object" && value.is_object()) ||
                  (t == "array" && value.is_array()) ||
                  (t == "string" && value.is_string()) ||
                  (t == "integer" && value.is_number_integer()) ||
                  (t == "number" && value.is_number()) ||
                  (t == "boolean" && value.is_boolean());
        if (!ok) return where + ": expected " + t;
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& v : schema.at("enum"))
            if (v == value) ok = true;
        if (!ok) return where + ": not in enum";
    }
    if (schema.contains("pattern") && value.is_string()) {
        std::regex re(schema.at("pattern").get<std::string>());
        if (!std::regex_match(value.get<std::string>(), re))
            return where + ": pattern mismatch on '" + value.get<std::string>() + "'";
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema.at("required"))
                if (!value.contains(key.get<std::string>()))
                    return where + ": missing required key " + key.get<std::string>();
        const Json* props = schema.contains("properties") ? &schema.at("properties") : nullptr;
        for (const auto& [key, sub] : value.items()) {
            if (props && props->contains(key)) {
                std::string err = validate(sub, props->at(key), where + "." + key);
                if (!err.empty()) return err;
            } else if (schema.contains("additionalProperties") &&
                       schema.at("additionalProperties").is_boolean() &&
                       !schema.at("additionalProperties").get<bool>()) {
                return where + ": unexpected key " + key;
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const auto& item : value) {
            std::string err =
                validate(item, schema.at("items"), where + "[" + std::to_string(i) + "]");
            if (!err.empty()) return err;
            ++i;
        }
    }
    return {};
}

void check_schema(const std::string& payload, const std::string& schema_name) {
    Json value = Json::parse(payload);
    std::string err = validate(value, load_schema(schema_name), "$");
    INFO(err);
    CHECK(err.empty());
}

std::string dir() {
    static std::string d = [] {
        std::string path = "/tmp/marsem_cli_test";
        int rc = std::system(("mkdir -p " + path).c_str());
        REQUIRE(rc == 0);
        return path;
    }();
    return d;
}

} // namespace

TEST_CASE("exit codes follow the contract") {
    write_file(dir() + "/c4.json",
               R"({"ground":[1,2,3,4],"facets":[[1,2],[2,3],[3,4],[1,4]],"shape":[2,2,2,2]})");
    write_file(dir() + "/k4.json",
               R"({"ground":[1,2,3,4],"facets":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]],"shape":[2,2,2,2]})");
    write_file(dir() + "/ex2.json",
               R"({"ground":[1,2,3,4],"facets":[[1,2],[1,3,4],[2,3,4]],"shape":[2,2,2,2]})");
    write_file(dir() + "/broken.json", "{\"ground\": [1,2");

    CHECK(run("check " + dir() + "/c4.json").exit_code == 0);
    CHECK(run("check " + dir() + "/k4.json").exit_code == 10);
    CHECK(run("check " + dir() + "/ex2.json --max-n 2").exit_code == 20);
    CHECK(run("check " + dir() + "/broken.json").exit_code == 2);
    CHECK(run("check " + dir() + "/missing.json").exit_code == 2);

    // guard: a 13-vertex path exceeds the facet guard
    std::string big;
    for (int v = 1; v < 13; ++v) big += std::to_string(v) + " " + std::to_string(v + 1) + "\n";
    write_file(dir() + "/big.txt", big);
    CHECK(run("facets " + dir() + "/big.txt").exit_code == 3);
}

TEST_CASE("json outputs validate against the shipped schemas") {
    write_file(dir() + "/table.json",
               R"({"shape":[2,2],"cells":[{"index":[1,1],"count":1},{"index":[2,2],"count":"1"}]})");
    write_file(dir() + "/edge.json", R"({"ground":[1,2],"facets":[[1,2]],"shape":[2,2]})");
    write_file(dir() + "/tri.txt", "1 2\n1 3\n2 3\n");

    auto cert_n = run("check " + dir() + "/c4.json --format json");
    CHECK(cert_n.exit_code == 0);
    check_schema(cert_n.out, "certificate.schema.json");

    auto cert_nn = run("check " + dir() + "/k4.json --format json");
    CHECK(cert_nn.exit_code == 10);
    check_schema(cert_nn.out, "certificate.schema.json");

    auto cert_u = run("check " + dir() + "/ex2.json --max-n 2 --format json");
    CHECK(cert_u.exit_code == 20);
    check_schema(cert_u.out, "certificate.schema.json");

    auto holes = run("holes " + dir() + "/k4.json --max-n 4 --format json");
    CHECK(holes.exit_code == 0);
    check_schema(holes.out, "holes.schema.json");
    for (const auto& h : Json::parse(holes.out))
        CHECK(validate(h, load_schema("hole.schema.json"), "$").empty());

    auto facets = run("facets " + dir() + "/tri.txt --format json");
    CHECK(facets.exit_code == 0);
    check_schema(facets.out, "facets_report.schema.json");

    auto minor = run("minor " + dir() + "/k4.json --format json");
    CHECK(minor.exit_code == 0);
    check_schema(minor.out, "minor_report.schema.json");

    auto margin = run("margin " + dir() + "/table.json " + dir() + "/edge.json --format json");
    CHECK(margin.exit_code == 0);
    check_schema(margin.out, "margin_report.schema.json");
    check_schema(Json::parse(margin.out)["full"].dump(), "vector.schema.json");
    check_schema(Json::parse(margin.out)["reduced"].dump(), "vector.schema.json");

    // inputs themselves satisfy their schemas
    check_schema(run("holes " + dir() + "/k4.json --max-n 0 --format json").out,
                 "holes.schema.json");
    std::ifstream model(dir() + "/k4.json");
    Json mj;
    model >> mj;
    CHECK(validate(mj, load_schema("model.schema.json"), "$").empty());
}

TEST_CASE("identical inputs give byte-identical output; workers do not matter") {
    auto a = run("check " + dir() + "/k4.json --format json");
    auto b = run("check " + dir() + "/k4.json --format json");
    CHECK(a.out == b.out);

    auto h1 = run("holes " + dir() + "/k4.json --max-n 4 --workers 1 --format json");
    auto h4 = run("holes " + dir() + "/k4.json --max-n 4 --workers 4 --format json");
    CHECK(h1.out == h4.out);
    CHECK(!h1.out.empty());

    auto f1 = run("facets " + dir() + "/tri.txt --format json");
    auto f2 = run("facets " + dir() + "/tri.txt --format json");
    CHECK(f1.out == f2.out);
}

TEST_CASE("facets warns on graphs with a K4 minor but still emits the system") {
    write_file(dir() + "/k5.txt",
               "1 2\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n3 4\n3 5\n4 5\n");
    auto rep = run("facets " + dir() + "/k5.txt --format json");
    CHECK(rep.exit_code == 0);
    Json j = Json::parse(rep.out);
    CHECK_FALSE(j["k4_minor_free"].get<bool>());
    CHECK(j.contains("warning"));
    CHECK(j["inequalities"].size() > 40);
    for (const auto& row : j["inequalities"]) CHECK(row["valid"].get<bool>());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopcas/json_io.hpp"
#include "test_support.hpp"

using namespace loopcas;

TEST_CASE("algebra documents round trip") {
    for (const char* spec : {"sl2", "gl11", "osp12", "gl:2,1"}) {
        SuperAlgebra A = *SuperAlgebra::builtin(spec);
        Json j = algebra_to_json(A);
        SuperAlgebra back = algebra_from_json(j);
        INFO(spec);
        CHECK(back.fingerprint() == A.fingerprint());
        CHECK(back.dim() == A.dim());
        CHECK(back.labels() == A.labels());
        CHECK(back.cartan() == A.cartan());
        for (int i = 0; i < A.dim(); ++i)
            for (int k = 0; k < A.dim(); ++k) {
                CHECK(back.form(i, k) == A.form(i, k));
                AlgElem a, b;
                for (const auto& [m, c] : A.bracket(i, k)) a.add(m, c);
                for (const auto& [m, c] : back.bracket(i, k)) b.add(m, c);
                CHECK(a == b);
            }
        CHECK(back.gl_signature() == A.gl_signature());
    }
}

TEST_CASE("serialization is byte-stable") {
    SuperAlgebra A = SuperAlgebra::gl(2, 1);
    CHECK(algebra_to_json(A).dump(2) == algebra_to_json(SuperAlgebra::gl(2, 1)).dump(2));
}

TEST_CASE("corrupted documents are rejected with witnesses") {
    Json j = algebra_to_json(SuperAlgebra::sl2());
    // damage one structure constant: [h,e] = 2e -> 3e
    for (auto& entry : j["brackets"]) {
        if (entry[0] == 1 && entry[1] == 2) entry[2][0][1] = "3";
    }
    try {
        algebra_from_json(j);
        FAIL("expected TableValidationError");
    } catch (const TableValidationError& e) {
        CHECK(!e.report.ok());
        bool witnessed = false;
        for (const auto& v : e.report.violations)
            if (!v.witness.empty()) witnessed = true;
        CHECK(witnessed);
    }
}

TEST_CASE("schema violations are caught early") {
    Json j = algebra_to_json(SuperAlgebra::sl2());
    Json no_parity = j;
    no_parity["basis"][0].erase("parity");
    CHECK_THROWS_AS(algebra_from_json(no_parity), SchemaError);

    Json missing = j;
    missing.erase("form");
    CHECK_THROWS_AS(algebra_from_json(missing), SchemaError);

    Json bad_fraction = j;
    bad_fraction["form"][0][2] = "x/y";
    CHECK_THROWS_AS(algebra_from_json(bad_fraction), SchemaError);

    Json bad_index = j;
    bad_index["brackets"][0][0] = 12;
    CHECK_THROWS_AS(algebra_from_json(bad_index), SchemaError);
}

TEST_CASE("representation documents round trip") {
    SuperAlgebra g = SuperAlgebra::gl(2, 1);
    Representation v = Representation::natural(g);
    Json j = representation_to_json(g, v);
    Representation back = representation_from_json(g, j);
    CHECK(back.dimension() == v.dimension());
    for (int b = 0; b < g.dim(); ++b) CHECK(back.action(b) == v.action(b));

    SuperAlgebra s = SuperAlgebra::sl2();
    Representation ad = Representation::adjoint(s);
    Representation ad_back = representation_from_json(s, representation_to_json(s, ad));
    for (int b = 0; b < s.dim(); ++b) CHECK(ad_back.action(b) == ad.action(b));
}

TEST_CASE("corrupted representation actions are rejected") {
    SuperAlgebra g = SuperAlgebra::gl(2, 1);
    Json j = representation_to_json(g, Representation::natural(g));
    j["actions"]["E[1,2]"][0][2] = "2"; // E12 v2 = 2 v1 breaks the bracket
    try {
        representation_from_json(g, j);
        FAIL("expected TableValidationError");
    } catch (const TableValidationError& e) {
        bool compat = false;
        for (const auto& v : e.report.violations)
            if (v.check == "bracket-compatibility" && v.witness.size() == 2) compat = true;
        CHECK(compat);
    }
}

TEST_CASE("residual reports serialize exactly") {
    SuperAlgebra s = SuperAlgebra::sl2();
    RootDatum R = root_decomposition(s);
    ResidualReport rep = verify_central(s, UEAElement::generator(*s.basis_index("h")));
    Json j = residual_report_to_json(s, rep);
    CHECK(j["pass"] == false);
    bool found = false;
    for (const auto& entry : j["residuals"]) {
        if (entry["generator"] == "e") {
            found = true;
            CHECK(entry["zero"] == false);
            CHECK(entry["residual"]["text"] == "2*e");
            CHECK(entry["residual"]["terms"][0][1] == "2");
        }
    }
    CHECK(found);
}

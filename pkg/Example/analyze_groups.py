import sys
import os
try:
    import abelat
except ImportError:
    sys.path.append(os.path.join(os.path.dirname(__file__), "..", "src"))
    import abelat


def analyze_default():
    analyzer = abelat.Analyzer(abelat.parse_group_spec("C7"), logging_func=print, report_dir="report_dir_default")
    analyzer.run()
    print(analyzer.report)


def bases_of_cyclic_group():
    group = abelat.parse_group_spec("C9")
    for basis in [
        abelat.general_min_basis(group, strategy="difference"),
        abelat.general_min_basis(group, strategy="inverse"),
        abelat.sha_basis(group),
        abelat.single_orbit_basis(group),
    ]:
        n_orbits = len(abelat.orbits(basis.vectors))
        print(f"{basis!r}: norms {basis.norms}, unimodular {basis.unimodular}, {n_orbits} orbit(s)")


def certificate_round_trip():
    cert = abelat.build_certificate(abelat.parse_group_spec("C4xC2"))
    print(cert)
    low, high = cert.gamma_range
    print(f"gamma in [{low}, {high}]")
    filepath = abelat.abelat_utils.save_json(cert.to_json(), os.path.join("report_dir_default", "cert_C4xC2.json"))
    loaded = abelat.EutaxyCertificate.from_json(abelat.abelat_utils.load_json(filepath))
    print(f"{filepath}: verified {abelat.verify_certificate(loaded)}")


def small_sweep():
    reports = abelat.sweep(10, logging_func=print)
    print(abelat.reports_to_csv(reports))


if __name__ == "__main__":
    analyze_default()
    bases_of_cyclic_group()
    certificate_round_trip()
    small_sweep()

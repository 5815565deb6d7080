import pytest

from src.microagg.etl.fetch import load_anonymized_csv, load_csv, load_roles_config
from src.microagg.exceptions import DataError
from src.microagg.table import Role

ROLES = "# census extract\nage = qi\nhours=qi\n\nsalary=confidential\nrow_id=ignore\n"


@pytest.fixture
def roles(write_text):
    return load_roles_config(write_text("roles.cfg", ROLES))


def test_load_roles_config(roles):
    assert [(spec.name, spec.role) for spec in roles] == [
        ("age", Role.QUASI_IDENTIFIER),
        ("hours", Role.QUASI_IDENTIFIER),
        ("salary", Role.CONFIDENTIAL),
        ("row_id", Role.IGNORED),
    ]


@pytest.mark.parametrize(
    "text, message",
    [
        ("age=qi\nage=confidential\n", "declared twice"),
        ("age=secret\n", "unknown role"),
        ("age qi\n", "expected 'column=role'"),
    ],
)
def test_load_roles_config_errors(write_text, text, message):
    with pytest.raises(DataError, match=message):
        load_roles_config(write_text("bad.cfg", text))


def test_load_csv_three_rows(write_text, roles):
    path = write_text("data.csv", "row_id,age,hours,salary\n1,30,40,1000\n2,45,20,2500\n3,52,35,1800\n")
    table = load_csv(path, roles)

    assert table.n == 3
    assert table.qi_names == ("age", "hours")
    assert table.confidential_name == "salary"
    # columns are reordered quasi-identifiers, confidential, ignored
    assert list(table.data.columns) == ["age", "hours", "salary", "row_id"]
    assert table.confidential_values.tolist() == [1000.0, 2500.0, 1800.0]


def test_load_csv_drop_missing(write_text, roles):
    path = write_text("data.csv", "row_id,age,hours,salary\n1,30,40,1000\n2,,20,2500\n3,52,35,1800\n")
    table = load_csv(path, roles, drop_missing=True)

    assert table.n == 2
    assert table.data.row_id.tolist() == [1.0, 3.0]


def test_load_csv_missing_cell_names_row(write_text, roles):
    path = write_text("data.csv", "row_id,age,hours,salary\n1,30,40,1000\n2,,20,2500\n3,52,35,1800\n")
    with pytest.raises(DataError, match="Row 2, column 'age'"):
        load_csv(path, roles)


def test_load_csv_unparseable_cell(write_text, roles):
    path = write_text("data.csv", "row_id,age,hours,salary\n1,30,40,1000\n2,41,20,n/a\n")
    with pytest.raises(DataError, match="Row 2, column 'salary'"):
        load_csv(path, roles)


def test_load_csv_unknown_column(write_text, roles):
    path = write_text("data.csv", "row_id,age,hours,salary,zip\n1,30,40,1000,10001\n")
    with pytest.raises(DataError, match="Unknown column"):
        load_csv(path, roles)


def test_load_csv_header_only(write_text, roles):
    path = write_text("data.csv", "row_id,age,hours,salary\n")
    with pytest.raises(DataError):
        load_csv(path, roles)


def test_load_csv_missing_file(tmp_path, roles):
    with pytest.raises(OSError):
        load_csv(tmp_path / "absent.csv", roles)


def test_load_anonymized_csv(write_text, roles):
    path = write_text(
        "release.csv",
        "age,hours,salary,row_id,cluster_id\n37.5,30,1000,1,0\n37.5,30,2500,2,0\n52,35,1800,3,1\n",
    )
    anonymized = load_anonymized_csv(path, roles)

    assert anonymized.n == 3
    assert anonymized.cluster_ids.tolist() == [0, 0, 1]


def test_load_anonymized_csv_needs_cluster_ids(write_text, roles):
    path = write_text("release.csv", "age,hours,salary,row_id\n37.5,30,1000,1\n")
    with pytest.raises(DataError, match="cluster_id"):
        load_anonymized_csv(path, roles)


def test_load_csv_invalid_utf8(tmp_path, roles):
    path = tmp_path / "data.csv"
    path.write_bytes(b"row_id,age,hours,salary\n1,30,40,1000\n2,\xff\xfe,20,2500\n")
    with pytest.raises(DataError, match="not UTF-8"):
        load_csv(path, roles)


def test_load_csv_row_with_extra_fields(write_text, roles):
    path = write_text("data.csv", "row_id,age,hours,salary\n1,30,40,1000\n2,45,20,2500,7,8\n")
    with pytest.raises(DataError, match="line 3"):
        load_csv(path, roles)

# coding: utf8

import io
import json
import os

import pytest

import infostruct.cli as cli
from infostruct.main import main
from infostruct.tools.data import format_joint, modulo_process, read_joint


@pytest.fixture(params=['measure',
                        'process',
                        'markov',
                        'bounds_random',
                        'prove',
                        'maximize',
                        'estimate',
                        'sample'])
def generate_cli_commands(request):
    if request.param == 'measure':
        test_input = [
            'measure',
            '--joint', 'table.txt',
            '--format', 'csv']
        keys_output = [
            'task',
            'joint',
            'format']

    if request.param == 'process':
        test_input = [
            'process',
            '--kind', 'parity',
            '--n', '6',
            '--k', '2',
            '--m', '0']
        keys_output = [
            'task',
            'kind',
            'n',
            'k',
            'm']

    if request.param == 'markov':
        test_input = [
            'markov',
            '--transition', 'chain.txt',
            '--nmax', '8']
        keys_output = [
            'task',
            'transition',
            'nmax']

    if request.param == 'bounds_random':
        test_input = [
            'bounds',
            '--random',
            '--n', '4',
            '--k', '2',
            '--samples', '10000',
            '--seed', '3',
            '--out', 'batch.csv']
        keys_output = [
            'task',
            'n',
            'k',
            'samples',
            'seed',
            'out']

    if request.param == 'prove':
        test_input = [
            'prove',
            '--target', '(N-1)B-I',
            '--n', '12',
            '--emit-certificate', 'certificate.json']
        keys_output = [
            'task',
            'target',
            'n',
            'emit_certificate']

    if request.param == 'maximize':
        test_input = [
            'maximize',
            '--objective', 'binding',
            '--n', '3',
            '--k', '2',
            '--restarts', '20',
            '--seed', '1',
            '--out', 'best.txt']
        keys_output = [
            'task',
            'objective',
            'n',
            'k',
            'restarts',
            'seed',
            'out']

    if request.param == 'estimate':
        test_input = [
            'estimate',
            '--data', 'symbols.txt',
            '--k', '2',
            '--nmax', '4',
            '--format', 'csv']
        keys_output = [
            'task',
            'data',
            'k',
            'nmax',
            'format']

    if request.param == 'sample':
        test_input = [
            'sample',
            '--transition', 'chain.txt',
            '--length', '1000000',
            '--seed', '5',
            '--out', 'symbols.txt']
        keys_output = [
            'task',
            'transition',
            'length',
            'seed',
            'out']

    return test_input, keys_output


def test_cli(generate_cli_commands):
    import re
    test_input = generate_cli_commands[0]
    keys_output = generate_cli_commands[1]
    regex = re.compile(r'\-.*$')
    test_input_filtered = [i for i in test_input if not regex.match(i)]
    parser = cli.parse_command_line()
    args = parser.parse_args(test_input)
    arguments = vars(args)
    outputs = [str(arguments[x]) for x in keys_output]
    assert outputs == test_input_filtered


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    status = main(argv)
    captured = capsys.readouterr()
    return status, captured.out, captured.err


@pytest.fixture
def parity_file(tmp_path):
    path = tmp_path / "parity.txt"
    path.write_text(format_joint(modulo_process(3, 2, 0)))
    return str(path)


@pytest.fixture
def chain_file(tmp_path):
    path = tmp_path / "chain.txt"
    path.write_text("2\n0.9 0.1\n0.3 0.7\n")
    return str(path)


def test_process_measure_pipeline(capsys, monkeypatch):
    status, table, _ = run(['process', '--kind', 'parity', '--n', '6', '--k', '2', '--m', '0'], capsys)
    assert status == 0
    assert table.splitlines()[0] == "6 2"

    status, out, _ = run(['measure'], capsys, stdin=table, monkeypatch=monkeypatch)
    assert status == 0
    report = json.loads(out)
    assert report["binding_information"] == pytest.approx(5.0, abs=1e-9)
    assert report["multi_information"] == pytest.approx(1.0, abs=1e-9)
    assert report["joint_entropy"] == pytest.approx(5.0, abs=1e-9)


def test_process_into_bounds(capsys, monkeypatch):
    _, table, _ = run(['process', '--kind', 'giant_bit', '--n', '4', '--bits', '1,3'], capsys)
    status, out, _ = run(['bounds', '--format', 'csv'], capsys, stdin=table, monkeypatch=monkeypatch)
    assert status == 0
    header, row = out.splitlines()
    assert len(header.split(",")) == 10
    assert [float(value) for value in row.split(",")[:3]] == pytest.approx([1.0, 3.0, 1.0], abs=1e-9)


def test_measure_ordering(parity_file, capsys):
    status, out, _ = run(['measure', '--joint', parity_file, '--ordering', '2,3,1'], capsys)
    assert status == 0
    report = json.loads(out)
    assert report["ordering"] == [2, 3, 1]
    assert report["pir_profile"] == pytest.approx([1.0, 1.0, 0.0], abs=1e-9)

    status, _, err = run(['measure', '--joint', parity_file, '--ordering', '1,1,2'], capsys)
    assert status == 1
    assert "permutation" in err


def test_missing_file(tmp_path, capsys):
    status, out, err = run(['measure', '--joint', str(tmp_path / 'missing.txt')], capsys)
    assert status == 1
    assert out == ""
    assert "No such file" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as error:
        main(['process', '--kind', 'spiral', '--n', '3'])
    assert error.value.code == 1
    err = capsys.readouterr().err
    assert "--kind" in err and "usage" in err

    with pytest.raises(SystemExit) as error:
        main([])
    assert error.value.code == 1


def test_invalid_process(capsys):
    status, _, err = run(['process', '--kind', 'modulo', '--n', '3', '--k', '2', '--m', '5'], capsys)
    assert status == 1
    assert "Residue" in err


def test_prove(tmp_path, capsys):
    status, out, _ = run(['prove', '--target', '(N-1)B-I', '--n', '3'], capsys)
    assert status == 0
    assert json.loads(out)["status"] == "proven"

    certificate = str(tmp_path / "refutation.json")
    status, out, _ = run(['prove', '--target', 'I-B', '--n', '3', '--emit-certificate', certificate], capsys)
    assert status == 2
    report = json.loads(out)
    assert report["status"] == "refuted"
    assert report["vector"] == ["0/1", "1/1", "2/1", "2/1"]
    with open(certificate) as f:
        assert json.load(f) == report
    with open(certificate + ".commandline.json") as f:
        commandline = json.load(f)
    assert commandline["task"] == "prove"
    assert commandline["target"] == "I-B"
    assert commandline["output"] == certificate


def test_prove_elemental(capsys):
    status, out, _ = run(['prove', '--target', 'H(1,2)-H(1)', '--n', '3', '--cone', 'elemental'], capsys)
    assert status == 0
    assert json.loads(out)["cone"] == "elemental"

    status, _, err = run(['prove', '--target', 'B+1', '--n', '3'], capsys)
    assert status == 1


def test_markov(chain_file, capsys):
    status, out, _ = run(['markov', '--transition', chain_file, '--nmax', '5'], capsys)
    assert status == 0
    report = json.loads(out)
    assert report["stationary"] == pytest.approx([0.75, 0.25], abs=1e-12)
    assert report["identity_checks"]["max_violation"] < 1e-9
    assert len(report["identity_checks"]["blocks"]) == 5

    status, out, _ = run(['markov', '--epsilon', '0.1', '--nmax', '3', '--format', 'csv'], capsys)
    assert status == 0
    lines = out.splitlines()
    assert len(lines) == 4
    assert "predictive_information_rate" in lines[0].split(",")


def test_markov_reducible(tmp_path, capsys):
    path = tmp_path / "identity.txt"
    path.write_text("2\n1 0\n0 1\n")
    status, _, err = run(['markov', '--transition', str(path)], capsys)
    assert status == 1
    assert "reducible" in err


def test_bounds_random(tmp_path, capsys):
    out_path = str(tmp_path / "batch.csv")
    status, _, _ = run(['bounds', '--random', '--n', '3', '--k', '2', '--samples', '20', '--seed', '1',
                        '--out', out_path, '--format', 'csv'], capsys)
    assert status == 0
    with open(out_path) as f:
        lines = f.read().splitlines()
    assert len(lines) == 21
    assert len(lines[0].split(",")) == 11
    assert not os.path.exists(out_path + ".violations.csv")
    with open(out_path + ".commandline.json") as f:
        commandline = json.load(f)
    assert commandline["seed"] == 1
    assert commandline["samples"] == 20


def test_bounds_corners(capsys):
    status, out, _ = run(['bounds', '--corners', '--n', '6', '--k', '2'], capsys)
    assert status == 0
    report = json.loads(out)
    points = {corner["label"]: (corner["H"], corner["I"], corner["B"]) for corner in report["corners"]}
    assert points["giant_bit"] == pytest.approx((1, 5, 1), abs=1e-9)
    assert report["tight"]["I<=NlogK-H"] == "independent"


@pytest.mark.timeout(300)
def test_maximize(tmp_path, capsys):
    best = str(tmp_path / "best.txt")
    status, out, _ = run(['maximize', '--objective', 'binding', '--n', '3', '--k', '2', '--restarts', '5',
                          '--seed', '0', '--out', best], capsys)
    assert status == 0
    summary = json.loads(out)
    assert summary["best_value"] <= 2.0 + 1e-9
    assert "probs" not in summary
    assert "diagnosis" in summary
    assert read_joint(best).n_vars == 3

    status, out, _ = run(['maximize', '--objective', 'multi', '--n', '2', '--k', '2', '--restarts', '2'], capsys)
    assert status == 0
    assert len(json.loads(out)["probs"]) == 4


@pytest.mark.timeout(300)
def test_sample_estimate(chain_file, tmp_path, capsys):
    symbols = str(tmp_path / "symbols.txt")
    status, _, _ = run(['sample', '--transition', chain_file, '--length', '20000', '--seed', '4',
                        '--out', symbols], capsys)
    assert status == 0
    status, out, _ = run(['estimate', '--data', symbols, '--k', '2', '--nmax', '3', '--format', 'csv'], capsys)
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "n,block_entropy,entropy_rate,excess_entropy,multi_information_rate,windows_per_state"
    assert len(lines) == 4

    status, _, err = run(['estimate', '--data', symbols, '--k', '2', '--nmax', '20000'], capsys)
    assert status == 1


@pytest.fixture(params=['measure', 'process', 'markov', 'bounds', 'prove', 'maximize', 'estimate', 'sample'])
def deterministic_commands(request, tmp_path):
    parity = tmp_path / "parity.txt"
    parity.write_text(format_joint(modulo_process(3, 2, 0)))
    chain = tmp_path / "chain.txt"
    chain.write_text("2\n0.9 0.1\n0.3 0.7\n")
    symbols = tmp_path / "symbols.txt"
    symbols.write_text(" ".join(["0", "1", "1", "0", "0", "0", "1", "1"] * 50))

    commands = {
        'measure': ['measure', '--joint', str(parity), '--ordering', '3,2,1'],
        'process': ['process', '--kind', 'random_simplex', '--n', '3', '--seed', '12'],
        'markov': ['markov', '--transition', str(chain), '--nmax', '4'],
        'bounds': ['bounds', '--random', '--n', '3', '--samples', '10', '--seed', '2'],
        'prove': ['prove', '--target', '(N-1)I-B', '--n', '5'],
        'maximize': ['maximize', '--objective', 'binding', '--n', '2', '--restarts', '2', '--seed', '7'],
        'estimate': ['estimate', '--data', str(symbols), '--k', '2', '--nmax', '3'],
        'sample': ['sample', '--epsilon', '0.2', '--length', '500', '--seed', '3'],
    }
    return commands[request.param]


@pytest.mark.timeout(300)
def test_runs_are_deterministic(deterministic_commands, capsys):
    first = run(deterministic_commands, capsys)
    second = run(deterministic_commands, capsys)
    assert first[0] == 0
    assert first[1] == second[1]

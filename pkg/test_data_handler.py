import csv
import json

import pytest

from data_handler import ReportHandler

REPORT = {
    'command': 'verify',
    'passed': False,
    'seed': 7,
    'suites': [
        {'suite': 'relations', 'passed': True, 'cases': [{'name': 'zb*z', 'passed': True, 'detail': ''}]},
        {'suite': 'confluence', 'passed': False,
         'cases': [{'name': 'overlap zb*v*z', 'passed': False, 'detail': 'residual z*xp'}]},
    ],
}


@pytest.fixture
def handler(tmp_path):
    return ReportHandler(str(tmp_path / 'reports'))


def test_report_id_ignores_timestamp(handler):
    stamped = handler.sanitize_report(REPORT)
    assert stamped['report_id'] == handler.report_id(REPORT)
    assert handler.report_id(stamped) == handler.report_id(REPORT)
    assert 'generated' in stamped


def test_json_export(handler):
    path = handler.export_to_json(REPORT, 'report.json')
    with open(path, encoding='utf-8') as f:
        data = json.load(f)
    assert data['suites'][1]['cases'][0]['name'] == 'overlap zb*v*z'
    assert data['report_id'] == handler.report_id(REPORT)


def test_csv_export_has_one_row_per_case(handler):
    path = handler.export_to_csv(REPORT, 'report.csv')
    with open(path, newline='', encoding='utf-8') as f:
        rows = list(csv.reader(f))
    assert rows[0] == ['suite', 'case', 'passed', 'detail']
    assert rows[2] == ['confluence', 'overlap zb*v*z', 'False', 'residual z*xp']


def test_markdown_lists_failures(handler):
    text = handler.generate_markdown_report(REPORT)
    assert "## ❌ confluence" in text
    assert "1/1 cases passed" in text
    assert "overlap zb*v*z: residual z*xp" in text


def test_save_report_writes_three_files(handler):
    paths = handler.save_report(REPORT)
    assert set(paths) == {'json', 'csv', 'markdown'}

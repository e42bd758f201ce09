"""
Report handling module for the quantum Minkowski engine.
Stamps verification reports, exports them to JSON or CSV and renders a
markdown summary.
"""

import csv
import hashlib
import json
import logging
import os
from datetime import datetime
from typing import Dict, List, Optional

from config import REPORT_DIR, STATUS_FAIL, STATUS_PASS

logger = logging.getLogger(__name__)


class ReportHandler:
    """Handles storage and export of verification reports."""

    def __init__(self, report_dir: str = REPORT_DIR):
        self.report_dir = report_dir

    def ensure_report_directory(self):
        """Create report directory if it doesn't exist."""
        os.makedirs(self.report_dir, exist_ok=True)

    def report_id(self, report: Dict) -> str:
        """Short content hash identifying a report independent of its timestamp."""
        body = json.dumps({k: v for k, v in report.items() if k not in ('generated', 'report_id', 'performance')},
                          sort_keys=True, default=str)
        return hashlib.sha256(body.encode()).hexdigest()[:16]

    def sanitize_report(self, report: Dict) -> Dict:
        """Add timestamp and id; cases are kept in their original order."""
        sanitized = dict(report)
        sanitized['generated'] = datetime.now().isoformat()
        sanitized['report_id'] = self.report_id(report)
        return sanitized

    def _default_filename(self, report: Dict, extension: str) -> str:
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        suite = str(report.get('suite', 'report')).replace(' ', '_')
        return f"{suite}_{timestamp}.{extension}"

    def export_to_json(self, report: Dict, filename: Optional[str] = None) -> str:
        """Export report to JSON format."""
        self.ensure_report_directory()
        filepath = os.path.join(self.report_dir, filename or self._default_filename(report, 'json'))
        with open(filepath, 'w', encoding='utf-8') as f:
            json.dump(self.sanitize_report(report), f, indent=2, ensure_ascii=False, default=str)
        logger.info("Report written to %s", filepath)
        return filepath

    def export_to_csv(self, report: Dict, filename: Optional[str] = None) -> str:
        """Export one row per case to CSV format."""
        self.ensure_report_directory()
        filepath = os.path.join(self.report_dir, filename or self._default_filename(report, 'csv'))
        with open(filepath, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f)
            writer.writerow(['suite', 'case', 'passed', 'detail'])
            for suite, case in self.iter_cases(report):
                writer.writerow([suite, case.get('name', ''), case.get('passed', False), case.get('detail', '')])
        logger.info("Report written to %s", filepath)
        return filepath

    @staticmethod
    def iter_cases(report: Dict):
        suites = report.get('suites') or [report]
        for suite in suites:
            for case in suite.get('cases', []):
                yield suite.get('suite', ''), case

    def generate_markdown_report(self, report: Dict) -> str:
        """Generate a markdown summary of a verification report."""
        suites: List[Dict] = report.get('suites') or [report]
        lines = [
            "# Verification Report",
            f"Generated on: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}",
            "",
            f"- **Seed**: {report.get('seed', 'N/A')}",
            f"- **Verdict**: {STATUS_PASS + ' pass' if report.get('passed') else STATUS_FAIL + ' fail'}",
            "",
        ]
        for suite in suites:
            marker = STATUS_PASS if suite.get('passed') else STATUS_FAIL
            cases = suite.get('cases', [])
            failed = [c for c in cases if not c.get('passed')]
            lines.append(f"## {marker} {suite.get('suite')}")
            lines.append(f"{len(cases) - len(failed)}/{len(cases)} cases passed")
            for case in failed[:20]:
                lines.append(f"- {STATUS_FAIL} {case.get('name')}: {case.get('detail', '')}")
            lines.append("")
        return "\n".join(lines)

    def save_report(self, report: Dict) -> Dict[str, str]:
        """Write JSON, CSV and markdown versions; returns the paths."""
        paths = {
            'json': self.export_to_json(report),
            'csv': self.export_to_csv(report),
        }
        self.ensure_report_directory()
        md_path = os.path.join(self.report_dir, self._default_filename(report, 'md'))
        with open(md_path, 'w', encoding='utf-8') as f:
            f.write(self.generate_markdown_report(report))
        paths['markdown'] = md_path
        return paths


# Global instance for easy access
report_handler = ReportHandler()

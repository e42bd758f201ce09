from decouple import config, Csv

# Logging Configuration
LOG_LEVEL = config('MINKQ_LOG_LEVEL', default='WARNING')
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Randomized Verification
SEED = config('MINKQ_SEED', default=20240521, cast=int)
TRIALS = config('MINKQ_TRIALS', default=1000, cast=int)
MAX_LEN = config('MINKQ_MAX_LEN', default=6, cast=int)
TRUNCATE_DEGREE = config('MINKQ_TRUNCATE_DEGREE', default=2, cast=int)

# Output and Reports
OUTPUT_FORMATS = ['text', 'json']
OUTPUT_FORMAT = config('MINKQ_OUTPUT_FORMAT', default='text')
REPORT_DIR = config('MINKQ_REPORT_DIR', default='verification_reports')
SAVE_REPORTS = config('MINKQ_SAVE_REPORTS', default=False, cast=bool)
GOLDEN_DIR = config('MINKQ_GOLDEN_DIR', default='golden')

# Suite fan-out
MAX_WORKERS = config('MINKQ_MAX_WORKERS', default=4, cast=int)

# Fault injection: "<b>,<a>" multiplies the swap coefficient of rule b*a by q
INJECT_RULE_FAULT = config('MINKQ_INJECT_RULE_FAULT', default='')

# Exit codes
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE_ERROR = 2

# Verification suites
SUITES = [
    'relations',
    'confluence',
    'relations-omega',
    'specialization',
    'classical-maxwell',
    'operator-identity',
    'q-limit',
    'degrees',
]
SUITE_ALIASES = {'all': SUITES}

# Presets under which the ω suite and the confluence acceptance run are checked
OMEGA_PRESETS = config('MINKQ_OMEGA_PRESETS', default='relq', cast=Csv())
CONFLUENCE_PRESET = config('MINKQ_CONFLUENCE_PRESET', default='relq')

# Golden relation files and the preset each is normal-ordered under
GOLDEN_RELATIONS = ('relations.txt', 'generic')
GOLDEN_SPECIALIZED = ('relations_conj_2param.txt', 'conj-2param')

# Status markers for text reports
STATUS_PASS = "✅"
STATUS_FAIL = "❌"

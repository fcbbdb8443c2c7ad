"""
Settings from environmental variables and registries of named models.
"""
import os
from dotenv import load_dotenv
from .charts import SUPPORTED_SURFACES, STANDARD_GLUINGS
from .gradient import FieldMode

BASE_DIR = os.path.abspath(os.path.dirname(__file__))

# Load the .env file into environmental variables.
if os.getenv('TEICHRETRACT_DIR') is None:
    load_dotenv()

# Fallback is to use temp dir inside repo if TEICHRETRACT_DIR is not set.
TEICHRETRACT_DIR = os.path.join(os.path.dirname(BASE_DIR), 'temp')

# Load the output directory from environmental variables.
if os.getenv('TEICHRETRACT_DIR') is not None:
    TEICHRETRACT_DIR = os.path.abspath(str(os.getenv('TEICHRETRACT_DIR')))
    if not os.path.isdir(TEICHRETRACT_DIR):
        raise FileNotFoundError(
            f'TEICHRETRACT_DIR={TEICHRETRACT_DIR} is not a valid directory. '
            'Check .env configuration.'
        )

SCHEMA_FILE = os.path.join(BASE_DIR, 'schema', 'run_config.schema.json')

# Supported surfaces and their built-in pants decompositions.
SURFACE_TYPES = {
    f'({genus},{punctures})': STANDARD_GLUINGS[(genus, punctures)]
    for genus, punctures in SUPPORTED_SURFACES
}
METRIC_MODELS = {
    'MODEL_WP': 'Diagonal model with weights 2 l / pi on lengths and twists',
    'EUCLID_FN': 'Identity in Fenchel-Nielsen coordinates',
}
FIELD_MODES = {
    mode.value: mode for mode in FieldMode
}
COMMANDS = {
    'systole': 'Systole and membership flags over sampled points',
    'flow': 'Trajectory of the retraction flow from one start',
    'retract': 'Time epsilon endpoints for a batch of thin starts',
    'gram': 'Gram matrix, kappa and derivative checks at one point',
    'equivariance': 'Flow against Dehn twists and symmetric loci',
    'continuity-demo': 'NAIVE against BLENDED field across 3 epsilon',
    'cover-check': 'Truncated Bers box coverage of the thick part',
}

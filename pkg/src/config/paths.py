import os

# Path to the root directory
ROOT_DIR = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# Path to outputs
OUTPUT_DIR = os.path.join(ROOT_DIR, "outputs")
# Path to simulation study outputs inside outputs directory
SIMULATION_OUTPUTS_DIR = os.path.join(OUTPUT_DIR, "simulation")
# Names of the study table files written inside a study output directory
STUDY_TABLE_CSV_FILE_NAME = "study_table.csv"
STUDY_TABLE_TEXT_FILE_NAME = "study_table.txt"

# Path to logs directory inside outputs directory
ERRORS_DIR = os.path.join(OUTPUT_DIR, "errors")
# Error file paths
FIT_ERROR_FILE_PATH = os.path.join(ERRORS_DIR, "fit_error.txt")
SIMULATE_ERROR_FILE_PATH = os.path.join(ERRORS_DIR, "simulate_error.txt")
FIXTURES_ERROR_FILE_PATH = os.path.join(ERRORS_DIR, "fixtures_error.txt")

# Paths inside the source directory
# Path to source directory
SRC_DIR = os.path.join(ROOT_DIR, "src")
# Path to config directory
CONFIG_DIR = os.path.join(SRC_DIR, "config")
# Path to default fit config
FIT_CONFIG_FILE_PATH = os.path.join(CONFIG_DIR, "fit_config.json")
# Path to default starting values per model
INITIAL_PARAMS_FILE_PATH = os.path.join(CONFIG_DIR, "initial_params.json")
# Paths to example study configs
NORMAL_STUDY_CONFIG_FILE_PATH = os.path.join(CONFIG_DIR, "normal_study.cfg")
RAYLEIGH_STUDY_CONFIG_FILE_PATH = os.path.join(CONFIG_DIR, "rayleigh_study.cfg")

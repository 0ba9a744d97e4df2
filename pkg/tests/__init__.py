# import logging
#
# logging.basicConfig(
#     format='%(asctime)s - %(name)s - %(levelname)s - %(lineno)d : %(pathname)s - %(message)s',
#     datefmt='%d-%b-%y %H:%M:%S',
#     level=logging.DEBUG
# )
